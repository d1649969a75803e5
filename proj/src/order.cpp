#include "shiftop/order.hpp"

#include <stdexcept>

namespace shiftop {

const Rational& Order::value() const {
  if (inf_) throw std::logic_error("infinite order has no value");
  return v_;
}

}  // namespace shiftop

#pragma once

#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "shiftop/conformal.hpp"

namespace shiftop::verify {

// Compute-once table shared by worker threads. A value is built by the first
// caller; concurrent callers wait on the same future.
template <class K, class V>
class Memo {
 public:
  V get(const K& key, const std::function<V()>& make) {
    std::shared_future<V> f;
    std::promise<V> p;
    bool owner = false;
    {
      std::lock_guard<std::mutex> lock(m_);
      auto it = map_.find(key);
      if (it == map_.end()) {
        f = p.get_future().share();
        map_.emplace(key, f);
        owner = true;
      } else {
        f = it->second;
      }
    }
    if (owner) {
      try {
        p.set_value(make());
      } catch (...) {
        p.set_exception(std::current_exception());
      }
    }
    return f.get();
  }

 private:
  std::mutex m_;
  std::map<K, std::shared_future<V>> map_;
};

using JetsPtr = std::shared_ptr<const GeometryJets>;

// Cached constructions keyed by the geometry label and truncation.
class Workspace {
 public:
  explicit Workspace(const JetExtension* ext = nullptr, std::optional<Rational> ext_n = std::nullopt)
      : ext_(ext), ext_n_(std::move(ext_n)) {}

  JetsPtr flat(const Rational& n, int K);
  JetsPtr einstein(const Rational& n, const Rational& mu, int K);  // mu = 0 gives the flat backend
  JetsPtr generic(const Rational& n);
  JetsPtr generic_with(const Rational& n, const JetExtension& ext, const std::string& tag);

  OperatorSeries shift_N(const JetsPtr& g, int N);         // S_N(lam), lam symbolic
  BoundaryOperator residue(const JetsPtr& g, int N);       // D_N(lam)
  OperatorSeries gjms_bar(const JetsPtr& g, int N);
  std::vector<TangentialElement> solution_ops(const JetsPtr& g, int Nmax);

 private:
  // Jets are owned by the workspace for its whole life, so addresses are stable keys.
  static const void* key(const JetsPtr& g) { return g.get(); }
  const JetExtension* ext_;
  std::optional<Rational> ext_n_;
  Memo<std::string, JetsPtr> jets_;
  Memo<std::pair<const void*, int>, OperatorSeries> shift_;
  Memo<std::pair<const void*, int>, BoundaryOperator> residue_;
  Memo<std::pair<const void*, int>, OperatorSeries> gjms_;
  Memo<std::pair<const void*, int>, std::vector<TangentialElement>> sol_;
};

}  // namespace shiftop::verify

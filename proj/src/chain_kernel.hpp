#pragma once

// Depth-first evaluation of a chain-structured table. Party p maps the state
// carried from parties 0..p-1 to a new state for each (x_p, a_p); the last
// party closes the state into a probability. Prefixes (x_0 a_0 ... x_p a_p)
// are shared, so each internal node is computed once.
//
// The top of the tree is split into independent prefixes and distributed
// across OpenMP threads.

#include <cstddef>
#include <span>
#include <vector>

#include <omp.h>

namespace netlocal::detail {

struct ChainShape {
  std::span<const int> in_radix;
  std::span<const int> out_radix;
  std::size_t outcome_count = 0;  // product of out_radix
};

template <class State, class Step, class Close>
class ChainWalker {
 public:
  ChainWalker(ChainShape shape, Step& step, Close& close, double* table)
      : shape_(shape), step_(step), close_(close), table_(table),
        last_(static_cast<int>(shape.in_radix.size()) - 1) {}

  // bufs must hold one State per party (index p receives party p's output).
  void descend(int p, std::size_t xi, std::size_t ai, const State& s,
               std::vector<State>& bufs) const {
    const auto rin = static_cast<std::size_t>(shape_.in_radix[static_cast<std::size_t>(p)]);
    const auto rout = static_cast<std::size_t>(shape_.out_radix[static_cast<std::size_t>(p)]);
    if (p == last_) {
      for (std::size_t x = 0; x < rin; ++x) {
        double* row = table_ + (xi * rin + x) * shape_.outcome_count + ai * rout;
        for (std::size_t a = 0; a < rout; ++a)
          row[a] = close_(static_cast<int>(x), static_cast<int>(a), s);
      }
      return;
    }
    State& out = bufs[static_cast<std::size_t>(p)];
    for (std::size_t x = 0; x < rin; ++x)
      for (std::size_t a = 0; a < rout; ++a) {
        step_(p, static_cast<int>(x), static_cast<int>(a), s, out);
        descend(p + 1, xi * rin + x, ai * rout + a, out, bufs);
      }
  }

  int last() const noexcept { return last_; }

 private:
  ChainShape shape_;
  Step& step_;
  Close& close_;
  double* table_;
  int last_;
};

/// Fills `table` (inputs-major, outcomes-minor). `make_bufs` returns a fresh
/// per-thread vector of State buffers, one per party.
template <class State, class Step, class Close, class MakeBufs>
void run_chain(ChainShape shape, const State& init, Step&& step, Close&& close,
               MakeBufs&& make_bufs, std::span<double> table, bool parallel) {
  ChainWalker<State, std::remove_reference_t<Step>, std::remove_reference_t<Close>> walker(
      shape, step, close, table.data());
  const int last = walker.last();

  // Split depth: enough prefixes to balance threads, never the last party.
  int depth = 0;
  std::size_t prefixes = 1;
  const int threads = parallel ? omp_get_max_threads() : 1;
  if (threads > 1) {
    while (depth < last && prefixes < static_cast<std::size_t>(8 * threads)) {
      prefixes *= static_cast<std::size_t>(shape.in_radix[static_cast<std::size_t>(depth)] *
                                           shape.out_radix[static_cast<std::size_t>(depth)]);
      ++depth;
    }
  }
  if (depth == 0) {
    auto bufs = make_bufs();
    walker.descend(0, 0, 0, init, bufs);
    return;
  }

  const auto count = static_cast<long long>(prefixes);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long t = 0; t < count; ++t) {
    auto bufs = make_bufs();
    // Decode prefix t into (x_p, a_p) pairs, party 0 most significant.
    std::vector<int> xs(static_cast<std::size_t>(depth)), as(static_cast<std::size_t>(depth));
    auto rem = static_cast<std::size_t>(t);
    for (int p = depth; p-- > 0;) {
      const auto rout = static_cast<std::size_t>(shape.out_radix[static_cast<std::size_t>(p)]);
      const auto rin = static_cast<std::size_t>(shape.in_radix[static_cast<std::size_t>(p)]);
      as[static_cast<std::size_t>(p)] = static_cast<int>(rem % rout);
      rem /= rout;
      xs[static_cast<std::size_t>(p)] = static_cast<int>(rem % rin);
      rem /= rin;
    }
    std::size_t xi = 0, ai = 0;
    const State* cur = &init;
    for (int p = 0; p < depth; ++p) {
      const auto up = static_cast<std::size_t>(p);
      step(p, xs[up], as[up], *cur, bufs[up]);
      cur = &bufs[up];
      xi = xi * static_cast<std::size_t>(shape.in_radix[up]) + static_cast<std::size_t>(xs[up]);
      ai = ai * static_cast<std::size_t>(shape.out_radix[up]) + static_cast<std::size_t>(as[up]);
    }
    walker.descend(depth, xi, ai, *cur, bufs);
  }
}

}  // namespace netlocal::detail

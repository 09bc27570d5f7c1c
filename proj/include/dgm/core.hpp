#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgm {

// Element sets are bitmasks over a dense index space; 64 elements is far
// beyond desk scale for every enumeration in this library.
using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline int lowest_bit(Mask m) { return __builtin_ctzll(m); }
inline bool has_bit(Mask m, int i) { return (m >> i) & 1u; }
inline Mask bit(int i) { return Mask{1} << i; }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LabelError : ArgumentError {
  using ArgumentError::ArgumentError;
};
struct PreconditionError : ArgumentError {
  using ArgumentError::ArgumentError;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration caps. Exceeding a cap raises ResourceError, never truncates.
struct Caps {
  int base_enum = 16;        // |E| for base/circuit enumeration
  int iso = 12;              // |E| for isomorphism search
  int minor_scan = 12;       // |E| for exhaustive minor search
  int subset_scan = 20;      // |E| for raw subset scans
  int twosep_rank = 22;      // min(r, n-r) for the 2-separation finder
  int pivot_minor = 8;       // vertices for pivot-minor search
  int graft_edges = 18;      // edges for feasible-set enumeration
  long regular_steps = 20'000'000;  // node budget for the F7-minor scan
};

inline Caps& caps() {
  static Caps c;
  return c;
}

inline std::vector<std::string> sorted_labels(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Dense label <-> index maps used by every structure in the library.
struct LabelIndex {
  std::vector<std::string> labels;
  std::map<std::string, int> index;

  LabelIndex() = default;
  explicit LabelIndex(std::vector<std::string> ls) : labels(std::move(ls)) {
    for (int i = 0; i < (int)labels.size(); ++i) {
      if (!index.emplace(labels[i], i).second)
        throw LabelError("duplicate label: " + labels[i]);
    }
  }

  int size() const { return (int)labels.size(); }

  int at(const std::string& l) const {
    auto it = index.find(l);
    if (it == index.end()) throw LabelError("unknown label: " + l);
    return it->second;
  }

  bool contains(const std::string& l) const { return index.count(l) > 0; }

  Mask mask_of(const std::vector<std::string>& ls) const {
    Mask m = 0;
    for (auto& l : ls) m |= bit(at(l));
    return m;
  }

  std::vector<std::string> labels_of(Mask m) const {
    std::vector<std::string> out;
    for (int i = 0; i < size(); ++i)
      if (has_bit(m, i)) out.push_back(labels[i]);
    return out;
  }
};

// Marker names for tree decompositions; "#" is reserved for them.
class MarkerSource {
 public:
  std::string next() { return "#" + std::to_string(++n_); }

 private:
  std::uint64_t n_ = 0;
};

inline void check_user_label(const std::string& l) {
  if (l.empty()) throw LabelError("empty label");
  if (l[0] == '#') throw LabelError("labels starting with '#' are reserved: " + l);
}

}  // namespace dgm

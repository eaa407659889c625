#pragma once

#include <boost/dynamic_bitset.hpp>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "adl/mat.hpp"

namespace adl {

inline constexpr uint32_t npos32 = 0xFFFFFFFFu;
inline constexpr uint64_t kDefaultGroupCap = uint64_t(1) << 26;

// Bitmask over GroupTable indices.
using ElementSet = boost::dynamic_bitset<>;

enum class GroupFamily { SL, PSL, Cyclic, Generic };

struct GroupSpec {
    GroupFamily family = GroupFamily::SL;
    int n = 2;
    RingSpec ring;
    std::string text;
};

// "sl:<n>:<ring>" | "psl:<n>:<ring>" | "cyc:<m>".
GroupSpec parse_group_spec(const std::string& text);

// |SL_n(Z/m)| resp. |PSL_n(Z/m)| from the prime factorization.
Int predicted_group_order(const GroupSpec& spec);

// Open-addressed map from packed matrices (up to 128 key bits) to indices.
struct KeyMap {
    std::vector<uint64_t> lo, hi;
    std::vector<uint32_t> val;
    size_t mask = 0, cnt = 0;

    void init(size_t expect);
    uint32_t find(uint64_t l, uint64_t h) const;
    void insert(uint64_t l, uint64_t h, uint32_t v);

  private:
    void grow();
};

// Indexed finite matrix group, immutable after construction. Entries are
// canonical residues mod m stored flat; identity sits at index 0. For
// projective tables each stored element is the lexicographically least among
// its scalar multiples s * M with s^n = 1.
struct GroupTable {
    RingSpec ring;
    uint32_t m = 0;
    int n = 0;
    bool projective = false;
    std::string spec_text;
    std::vector<uint32_t> scalars;  // units s with s^n = 1, ascending; {1} if not projective
    std::vector<uint32_t> ent;      // size() * n * n
    KeyMap index;
    std::vector<uint32_t> gens;

    // BFS closure of gens (identity always included).
    static GroupTable generate(const RingSpec& ring, int n, bool projective,
                               const std::vector<Mat>& gens, uint64_t cap,
                               const std::string& spec_text);

    uint32_t size() const { return uint32_t(ent.size() / (size_t(n) * n)); }
    const uint32_t* raw(uint32_t i) const { return ent.data() + size_t(i) * n * n; }

    uint32_t mul(uint32_t i, uint32_t j) const;
    uint32_t inv(uint32_t i) const;
    uint32_t conj(uint32_t g, uint32_t x) const { return mul(mul(g, x), inv(g)); }
    uint32_t pow(uint32_t i, int64_t e) const;

    Mat mat_of(uint32_t i) const;
    // npos32 when the (canonicalized) matrix is not in the table.
    uint32_t index_of(const Mat& mat) const;
    uint32_t index_of_raw(const uint32_t* e) const;

    // Conjugacy class data, computed lazily once.
    struct Classes {
        std::vector<uint32_t> class_of;   // element -> class id
        std::vector<uint32_t> reps;       // class id -> least element index
        std::vector<uint32_t> sizes;      // class id -> |class|
        std::vector<uint32_t> offsets;    // CSR into members
        std::vector<uint32_t> members;    // elements grouped by class, ascending
    };
    const Classes& classes() const;
    const std::vector<uint32_t>& inverse_table() const;

    ElementSet empty_set() const { return ElementSet(size()); }
    ElementSet full_set() const {
        ElementSet s(size());
        s.set();
        return s;
    }

  private:
    mutable std::mutex lazy_mu_;
    mutable std::unique_ptr<Classes> classes_;
    mutable std::unique_ptr<std::vector<uint32_t>> inv_;

    void canonicalize(uint32_t* e) const;
    void pack(const uint32_t* e, uint64_t& l, uint64_t& h) const;

  public:
    GroupTable() = default;
    // Moves are pre-publication only; the mutex itself is not moved.
    GroupTable(GroupTable&& o) noexcept { *this = std::move(o); }
    GroupTable& operator=(GroupTable&& o) noexcept {
        ring = std::move(o.ring);
        m = o.m;
        n = o.n;
        projective = o.projective;
        spec_text = std::move(o.spec_text);
        scalars = std::move(o.scalars);
        ent = std::move(o.ent);
        index = std::move(o.index);
        gens = std::move(o.gens);
        classes_ = std::move(o.classes_);
        inv_ = std::move(o.inv_);
        return *this;
    }
};

// enumerate_group checks the BFS closure against the predicted order.
GroupTable enumerate_group(const GroupSpec& spec, uint64_t cap = kDefaultGroupCap);
GroupTable enumerate_group(const std::string& spec_text, uint64_t cap = kDefaultGroupCap);

// Units s with s^n = 1, ascending. Finite rings only.
std::vector<Int> nth_root_scalars(const RingSpec& r, int n);

// Canonical coset representative modulo scalars: the lexicographically least
// s * m over s^n = 1 (row-major comparison of canonical residues).
Mat psl_project(const Mat& m);

// Scan-based center and centralizer (exact, exhaustive).
ElementSet center_set(const GroupTable& G);
ElementSet centralizer_set(const GroupTable& G, uint32_t c);
// Elements of C commuting with every element of C.
ElementSet center_of_subset(const GroupTable& G, const ElementSet& C);

// Reduction data modulo an ideal q of the base ring.
struct Reduction {
    std::shared_ptr<GroupTable> quotient;  // null when q is the zero ideal
    std::vector<uint32_t> map;             // this-group index -> quotient index
};
Reduction build_reduction(const GroupTable& G, const IdealSpec& q, uint64_t cap = kDefaultGroupCap);

// ker(rho_q) and the preimage of the center of the image under rho_q.
ElementSet congruence_set(const GroupTable& G, const IdealSpec& q);
ElementSet star_congruence_set(const GroupTable& G, const IdealSpec& q);

// Products e_{1,2}(a_2)...e_{1,n}(a_n): first row (1, a_2, ..., a_n), identity
// elsewhere. m^{n-1} elements, verified present in the table.
ElementSet unipotent_row_set(const GroupTable& G);
ElementSet row_congruence_set(const GroupTable& G, const IdealSpec& q);

// Carrier {e_{1,n}(a) : a in A}.
ElementSet elem_1n_set(const GroupTable& G);

// S * T by convolution over set bits; early exit on full cover.
ElementSet set_product(const GroupTable& G, const ElementSet& S, const ElementSet& T);
ElementSet set_inverse(const GroupTable& G, const ElementSet& S);
bool set_symmetric(const GroupTable& G, const ElementSet& S);
// Subgroup closure of S (id always included).
ElementSet subgroup_closure(const GroupTable& G, const ElementSet& S);
// True if g S g^{-1} = S for all g (checked on generators).
bool set_normal(const GroupTable& G, const ElementSet& S);

}  // namespace adl

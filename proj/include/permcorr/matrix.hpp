#pragma once

#include <cstddef>
#include <vector>

namespace permcorr {

enum class SymmetryClass { Symmetric, Antisymmetric, General };

const char* to_string(SymmetryClass c);

// Dense N x N coefficient matrix with a declared (and validated) symmetry
// class. Immutable after construction; validation is exact equality, since
// coefficient matrices are constructed, not measured.
class CoefficientMatrix {
public:
    CoefficientMatrix(int n, std::vector<double> row_major, SymmetryClass symmetry, bool hollow);

    static CoefficientMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                       SymmetryClass symmetry, bool hollow);

    int order() const { return n_; }
    SymmetryClass symmetry_class() const { return symmetry_; }
    bool hollow() const { return hollow_; }
    double max_abs() const { return max_abs_; }

    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<double>& data() const { return data_; }

private:
    int n_;
    SymmetryClass symmetry_;
    bool hollow_;
    double max_abs_;
    std::vector<double> data_;
};

// Classifies entries by exact checks: Symmetric, then Antisymmetric, else General.
SymmetryClass classify_entries(int n, const std::vector<double>& row_major);

// Bijection of {1..N}, stored 0-based.
class Permutation {
public:
    explicit Permutation(std::vector<int> mapping);

    static Permutation identity(int n);

    int size() const { return static_cast<int>(mapping_.size()); }
    int operator()(int i) const { return mapping_[i]; }
    const std::vector<int>& mapping() const { return mapping_; }

    Permutation inverse() const;

private:
    std::vector<int> mapping_;
};

struct ElementarySums {
    double sum_offdiag = 0.0;      // sum over i != j of a_ij
    double sum_diag = 0.0;         // sum of a_ii
    double sum_sq_offdiag = 0.0;   // sum over i != j of a_ij^2
    std::vector<double> row_sums;  // full row sums, diagonal included
    std::vector<double> col_sums;
    double triple_sum = 0.0;       // sum over all (i,j,k) of a_ij a_ik = sum_i row_sums[i]^2
    double max_abs = 0.0;
};

// Index patterns of the distinct-subscript sums over products of two entries.
// The trailing comment shows the sum each tag denotes; all listed subscripts
// are pairwise distinct.
enum class DistinctSumPattern {
    P4,        // sum' a_jk a_su        (j,k,s,u)
    P3Shared,  // sum' a_jk a_ju        (j,k,u)
    P3Diag,    // sum' a_jj a_su        (j,s,u)
    P2Sq,      // sum' a_jk^2           (j,k)
    P2DiagPair,// sum' a_jj a_ss        (j,s)
    P2Mixed,   // sum' a_jj a_ju        (j,u)
    P1,        // sum  a_jj^2
};

// Gamma = sum over all ordered pairs (i,j), i=j included, of a_ij b_{p(i)p(j)}.
double gamma_statistic(const CoefficientMatrix& a, const CoefficientMatrix& b,
                       const Permutation& perm);

// Returns c with c_ij = b_{p(i)p(j)}; symmetry class and hollow flag carry over.
CoefficientMatrix apply_permutation(const CoefficientMatrix& b, const Permutation& perm);

ElementarySums elementary_sums(const CoefficientMatrix& a);

// Distinct-subscript sum in O(N^2) by inclusion-exclusion over unrestricted
// sums; patterns needing more distinct indices than N has return 0.
double restricted_sum(const CoefficientMatrix& a, DistinctSumPattern pattern);

} // namespace permcorr

#pragma once

// Perfect complexes over a split algebra: bounded complexes of projective
// modules stored degreewise as lists of indecomposable-projective copies with
// differentials given blockwise by algebra elements.  Provides verification,
// minimalization, homotopy-category endomorphism algebras with an
// indecomposability test, construction from projective resolutions, transport
// along the induction/restriction/tensor functors with split chain pairs, and
// a search for the longest indecomposable complex.

#include "sga/functors.hpp"
#include "sga/homology.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sga {

using AlgebraDataPtr = std::shared_ptr<const AlgebraData>;

// map between direct sums of projectives P_{c(u)} -> P_{c(v)}: entry el[u][v]
// is the algebra element m in e_{c(u)} A e_{c(v)} acting by x -> x m
struct BlockMap {
  std::vector<std::vector<Vec>> el;
};

struct PerfectComplex {
  AlgebraDataPtr data;
  long shift = 0;                          // cohomological degree of terms[0]
  std::vector<std::vector<size_t>> terms;  // per degree: PIM class per copy
  std::vector<BlockMap> diffs;             // diffs[i] : terms[i] -> terms[i+1]

  size_t n_terms() const { return terms.size(); }
  size_t term_dim(size_t i) const;
  AModule term_module(size_t i) const; // direct sum of the listed PIMs
  Mat diff_matrix(size_t i) const;     // realized, term_dim(i+1) x term_dim(i)
  bool is_zero() const;
};

// one PIM class repeated `copies` times in a single degree
PerfectComplex stalk_complex(AlgebraDataPtr d, size_t cls, size_t copies = 1,
                             long shift = 0);

/* empty = shapes consistent, blocks in the right corners, d.d = 0 */
std::vector<std::string> verify_complex(const PerfectComplex& c);

/* every differential block lies in the radical */
bool is_minimal_complex(const PerfectComplex& c);

/* top nonzero degree minus bottom nonzero degree; throws on a zero complex */
size_t complex_length(const PerfectComplex& c);

/* dimension of the degree-i cohomology of the realized complex, keyed by
   absolute degree (shift applied); zero entries are omitted */
std::map<long, size_t> cohomology_dims(const PerfectComplex& c);

// cancel invertible differential blocks until the complex is minimal; the
// result is homotopy equivalent (cohomology is asserted unchanged) and zero
// boundary terms are trimmed
PerfectComplex minimalize(const PerfectComplex& c);

// endomorphism algebra of the complex in the homotopy category: chain
// endomorphisms modulo null-homotopic ones, computed in block coordinates
AlgebraPtr homotopy_end(const PerfectComplex& c);

/* local homotopy endomorphism algebra; throws on the zero complex and
   propagates NonSplitError */
bool is_indecomposable_complex(const PerfectComplex& c);

// minimal projective resolution of a module of finite projective dimension,
// laid out in degrees 0..pd with the module's cover in the top degree
PerfectComplex from_resolution(AlgebraDataPtr d, const AModule& m, size_t cutoff);

// ---------------------------------------------------------------------------
// Transport along the change-of-rings functors.  Induced/restricted/tensored
// terms stay projective; each is rewritten in PIM block form through its
// projective cover, which is an isomorphism.

struct TransportedComplex {
  PerfectComplex complex;
  // per degree: block-term coordinates -> the functor image of the realized
  // original term, and its inverse
  std::vector<Mat> from_block;
  std::vector<Mat> to_block;
};

TransportedComplex induce_complex(const SkewAlgebra& big, const SkewAlgebra& small,
                                  const CosetSystem& cs, AlgebraDataPtr big_data,
                                  const PerfectComplex& c);

TransportedComplex restrict_complex(const SkewAlgebra& big, const SkewAlgebra& small,
                                    const CosetSystem& cs, AlgebraDataPtr small_data,
                                    const PerfectComplex& c);

// degreewise split chain pair: forward[i] and backward[i] are verified chain
// maps between the realized original complex and the realized middle complex,
// with backward[i] * forward[i] = id in every degree
struct ComplexSplitPair {
  PerfectComplex middle;
  std::vector<Mat> forward;
  std::vector<Mat> backward;
};

// complex over the subgroup algebra -> induced complex restricted back
ComplexSplitPair unit_split_complex(const SkewAlgebra& big, const SkewAlgebra& small,
                                    const CosetSystem& cs, AlgebraDataPtr big_data,
                                    AlgebraDataPtr small_data,
                                    const PerfectComplex& c);

// complex over the full algebra -> restricted complex induced back; needs the
// subgroup index invertible (throws IndexNotInvertible)
ComplexSplitPair average_split_complex(const SkewAlgebra& big, const SkewAlgebra& small,
                                       const CosetSystem& cs, AlgebraDataPtr big_data,
                                       AlgebraDataPtr small_data,
                                       const PerfectComplex& c);

// complex over an embedded subalgebra -> tensored-up complex restricted back,
// split through a bimodule splitting of the inclusion
ComplexSplitPair subalgebra_split_complex(AlgebraDataPtr big_data, AlgebraPtr sub,
                                          const Mat& embedding, const Mat& zeta,
                                          const PerfectComplex& c);

// ---------------------------------------------------------------------------
// Longest indecomposable perfect complex up to a length and multiplicity
// bound, normalized to start in degree 0.

struct SgldimOptions {
  size_t length_bound = 3;
  size_t mult_bound = 2;
  uint64_t budget = 1000000; // enumeration steps before giving up
  bool use_closed_forms = true;
  size_t pd_cutoff = 10;
};

struct SgldimReport {
  enum class ClosedForm { none, semisimple, hereditary };

  size_t lower_bound = 0;
  std::optional<PerfectComplex> witness; // indecomposable of that length
  ClosedForm closed_form = ClosedForm::none;
  bool exact = false; // true only for closed forms
  // set when every length up to the bound was fully enumerated (pair is
  // (length_bound, mult_bound)); absent when the budget ran out
  std::optional<std::pair<size_t, size_t>> exhaustive_up_to;
  uint64_t steps = 0; // enumeration effort spent
};

SgldimReport sgldim_search(AlgebraDataPtr d, const SgldimOptions& opt);

// ---------------------------------------------------------------------------
// Verdict on finiteness of the strong global dimension.  Positive finiteness
// only ever comes from the semisimple/hereditary closed forms; an infinite
// certified global dimension refutes it through the equivalence between
// finite strong global dimension and piecewise heredity, which this library
// imports rather than reproves.

struct PiecewiseVerdict {
  enum class Kind { finite, not_pw_hereditary, unknown };
  Kind kind = Kind::unknown;
  size_t value = 0;       // meaningful for finite
  size_t lower_bound = 0; // meaningful for unknown
  std::string reason;
};

PiecewiseVerdict piecewise_hereditary_verdict(AlgebraDataPtr d,
                                              const SgldimOptions& opt);

} // namespace sga

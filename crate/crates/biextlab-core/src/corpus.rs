//! The standard verification corpus: all two-term complexes over a list of
//! small groups, with every homomorphism between them.

use alloc::vec;
use alloc::vec::Vec;

use crate::abgroup::{all_homs, direct_sum, FgAbGroup};
use crate::complex::TwoTermComplex;

/// The groups of the full corpus: 0, ℤ/2, ℤ/3, ℤ/4, ℤ/2⊕ℤ/2.
pub fn standard_groups() -> Vec<FgAbGroup> {
    vec![
        FgAbGroup::zero(),
        FgAbGroup::cyclic(2),
        FgAbGroup::cyclic(3),
        FgAbGroup::cyclic(4),
        direct_sum(&[FgAbGroup::cyclic(2), FgAbGroup::cyclic(2)]).group,
    ]
}

/// A smaller family used for the triple-valued checks, where the full corpus
/// cubed would be out of desk scale.
pub fn small_groups() -> Vec<FgAbGroup> {
    vec![
        FgAbGroup::zero(),
        FgAbGroup::cyclic(2),
        FgAbGroup::cyclic(3),
    ]
}

/// Every [A → B] with A, B drawn from `groups` and u any homomorphism.
pub fn two_term_complexes(groups: &[FgAbGroup]) -> Vec<TwoTermComplex> {
    let mut out = Vec::new();
    for a in groups {
        for b in groups {
            for u in all_homs(a, b) {
                out.push(TwoTermComplex::new(u));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        // Hom-counts over {0, Z/2, Z/3, Z/4, V4} sum to 60.
        assert_eq!(two_term_complexes(&standard_groups()).len(), 60);
        assert_eq!(two_term_complexes(&small_groups()).len(), 12);
    }
}

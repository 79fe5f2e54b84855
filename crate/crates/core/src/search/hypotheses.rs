use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::Result;
use crate::quadratic::Scalar;
use crate::recurrence::{
    characteristic_roots, is_degenerate, roots_multiplicatively_independent, Degeneracy,
    Independence, LinearRecurrence,
};

/// Two root positions, counted from 1, and their dependence verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootPair {
    pub i: usize,
    pub j: usize,
    pub verdict: Independence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceAudit {
    pub passed: bool,
    pub exponent_bound: u32,
    pub pairs: Vec<RootPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootOfUnityAudit {
    pub passed: bool,
    /// `(root position from 1, order)` for each root that is a root of unity.
    pub roots_of_unity: Vec<(usize, u32)>,
}

/// The four conditions under which the pair-sum equation is expected to
/// have finitely many solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub recurrence: LinearRecurrence,
    pub roots: Vec<Scalar>,
    pub multiplicities: Vec<u32>,
    pub nondegenerate: bool,
    pub degeneracy: Degeneracy,
    pub pairwise_independent: IndependenceAudit,
    pub no_root_of_unity_root: RootOfUnityAudit,
    pub last_coeff_not_unit: bool,
    pub all_hypotheses_hold: bool,
}

/// Audits `rec`. Fails with `UnsupportedOrder` when its characteristic roots
/// cannot be written down exactly.
pub fn audit_hypotheses(
    rec: &LinearRecurrence,
    independence_bound: u32,
) -> Result<HypothesisReport> {
    let cr = characteristic_roots(rec)?;
    let degeneracy = is_degenerate(rec)?;
    let nondegenerate = !degeneracy.is_degenerate();

    let mut pairs = Vec::new();
    for i in 0..cr.roots.len() {
        for j in i + 1..cr.roots.len() {
            let verdict =
                roots_multiplicatively_independent(&cr.roots[i], &cr.roots[j], independence_bound)?;
            pairs.push(RootPair {
                i: i + 1,
                j: j + 1,
                verdict,
            });
        }
    }
    let pairwise_independent = IndependenceAudit {
        passed: pairs.iter().all(|p| !p.verdict.is_dependent()),
        exponent_bound: independence_bound,
        pairs,
    };

    let roots_of_unity: Vec<(usize, u32)> = cr
        .roots
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.root_of_unity_order().map(|k| (i + 1, k)))
        .collect();
    let no_root_of_unity_root = RootOfUnityAudit {
        passed: roots_of_unity.is_empty(),
        roots_of_unity,
    };

    let last_coeff_not_unit = !rec.last_coeff().abs().is_one();
    let all_hypotheses_hold = nondegenerate
        && pairwise_independent.passed
        && no_root_of_unity_root.passed
        && last_coeff_not_unit;
    Ok(HypothesisReport {
        recurrence: rec.clone(),
        roots: cr.roots,
        multiplicities: cr.multiplicities,
        nondegenerate,
        degeneracy,
        pairwise_independent,
        no_root_of_unity_root,
        last_coeff_not_unit,
        all_hypotheses_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(s: &str) -> LinearRecurrence {
        s.parse().unwrap()
    }

    #[test]
    fn all_conditions_pass_for_one_plus_root_three() {
        let r = audit_hypotheses(&rec("2,2;0,1"), 10).unwrap();
        assert!(r.nondegenerate);
        assert!(r.pairwise_independent.passed);
        assert!(r.no_root_of_unity_root.passed);
        assert!(r.last_coeff_not_unit);
        assert!(r.all_hypotheses_hold);
    }

    #[test]
    fn failing_conditions_are_reported() {
        let even = audit_hypotheses(&rec("2,-1;0,2"), 10).unwrap();
        assert_eq!(even.degeneracy, Degeneracy::RepeatedRoot);
        assert_eq!(even.no_root_of_unity_root.roots_of_unity, vec![(1, 1)]);
        assert!(!even.last_coeff_not_unit);
        assert!(!even.all_hypotheses_hold);

        let six = audit_hypotheses(&rec("1,-1;0,3"), 10).unwrap();
        assert!(!six.nondegenerate);
        assert_eq!(
            six.no_root_of_unity_root.roots_of_unity,
            vec![(1, 6), (2, 6)]
        );
        assert!(!six.pairwise_independent.passed);

        let pell = audit_hypotheses(&rec("6,-1;0,1"), 5).unwrap();
        assert!(pell.nondegenerate);
        assert!(pell.no_root_of_unity_root.passed);
        assert_eq!(
            pell.pairwise_independent.pairs[0].verdict,
            Independence::Dependent {
                witness: crate::recurrence::Relation { p: 1, q: 1 }
            }
        );
        assert!(!pell.last_coeff_not_unit);
        assert!(!pell.all_hypotheses_hold);
    }
}

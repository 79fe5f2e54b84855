use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{pair_sum_search, CoordinateIndex, SearchOptions};
use crate::error::{Error, Result};
use crate::norm_form::{
    class_representatives, coordinate_set, Coordinate, NormFormProblem, SolutionView,
};
use crate::quadratic::{QuadNum, Scalar};
use crate::recurrence::{
    binet, characteristic_roots, is_degenerate, roots_multiplicatively_independent, Independence,
    LinearRecurrence,
};
use crate::serde_big;

pub const REMARK_IDS: [&str; 3] = ["2.3", "2.4", "2.5"];

const FIXTURES: [(&str, &str); 3] = [
    ("2.3", include_str!("../../fixtures/remark-2.3.json")),
    ("2.4", include_str!("../../fixtures/remark-2.4.json")),
    ("2.5", include_str!("../../fixtures/remark-2.5.json")),
];

#[derive(Clone, Debug, Deserialize)]
struct Fixture {
    id: String,
    d: u64,
    m: i64,
    recurrence: String,
    #[serde(default)]
    x1_prefix: Vec<String>,
    x1_bound: Option<String>,
    #[serde(default)]
    x2_prefix: Vec<String>,
    x2_bound: Option<String>,
    every_third_even: Option<bool>,
    parity_bound: Option<String>,
    expected_degeneracy: Option<String>,
    pair_search_bound: Option<String>,
    min_pair_hits: Option<usize>,
    period: Option<Vec<i64>>,
    member_of_x1: Option<String>,
    claimed_fundamental_unit: Option<String>,
    representative: Option<[String; 2]>,
    orbit_unit: Option<String>,
    x2_formula_terms: Option<usize>,
    binet_roots: Option<[String; 2]>,
    binet_coefficient: Option<String>,
    dependence_witness: Option<[i64; 2]>,
    claimed_membership_set: Option<u8>,
    #[serde(default)]
    known_discrepancies: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Agree,
    /// Disagreement that the fixture records as expected.
    KnownDiscrepancy,
    /// The bounded computation can neither confirm nor refute the claim.
    Inconclusive,
    Disagree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipRow {
    pub n: u64,
    #[serde(serialize_with = "serde_big::int")]
    pub sum: BigInt,
    pub in_x1: bool,
    pub in_x2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    pub id: String,
    pub index_bound: u64,
    pub problem: NormFormProblem,
    pub recurrence: LinearRecurrence,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership: Option<Vec<MembershipRow>>,
    pub summary: String,
    /// No check disagrees unexpectedly.
    pub consistent: bool,
}

impl RemarkReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Builder<'a> {
    fixture: &'a Fixture,
    checks: Vec<Check>,
}

impl Builder<'_> {
    fn push_inconclusive(&mut self, name: &str, expected: impl ToString, observed: impl ToString) {
        self.checks.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            status: CheckStatus::Inconclusive,
        });
    }

    fn push(&mut self, name: &str, expected: impl ToString, observed: impl ToString, agrees: bool) {
        let status = if agrees {
            CheckStatus::Agree
        } else if self.fixture.known_discrepancies.iter().any(|k| k == name) {
            CheckStatus::KnownDiscrepancy
        } else {
            CheckStatus::Disagree
        };
        self.checks.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            status,
        });
    }
}

fn big(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad integer {s:?} in fixture")))
}

fn list(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn missing(field: &str) -> Error {
    Error::InvariantViolation(format!("fixture lacks {field}"))
}

/// Replays the fixture `id` with index bound `n` and compares every recorded
/// claim with a fresh computation.
pub fn verify_remark(id: &str, n: u64) -> Result<RemarkReport> {
    let raw = FIXTURES
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::UnknownRemark(id.into()))?;
    if n < 10 {
        return Err(Error::InvalidInput(format!(
            "index bound must be at least 10, got {n}"
        )));
    }
    let fixture: Fixture = serde_json::from_str(raw)
        .map_err(|e| Error::InvariantViolation(format!("fixture {id}: {e}")))?;
    debug_assert_eq!(fixture.id, id);
    let problem = NormFormProblem::new(fixture.d, fixture.m)?;
    let rec: LinearRecurrence = fixture.recurrence.parse()?;
    let mut b = Builder {
        fixture: &fixture,
        checks: Vec::new(),
    };

    prefix_check(
        &mut b,
        &problem,
        "x1-prefix",
        Coordinate::X,
        &fixture.x1_prefix,
        &fixture.x1_bound,
    )?;
    prefix_check(
        &mut b,
        &problem,
        "x2-prefix",
        Coordinate::Y,
        &fixture.x2_prefix,
        &fixture.x2_bound,
    )?;

    let (summary, membership) = match id {
        "2.3" => (even_numbers(&mut b, &problem, &rec, n)?, None),
        "2.4" => (periodic(&mut b, &problem, &rec, n)?, None),
        _ => {
            let rows = pell_sums(&mut b, &problem, &rec, n)?;
            let x2 = rows.iter().filter(|r| r.in_x2).count();
            let x1 = rows.iter().filter(|r| r.in_x1).count();
            let summary = format!(
                "U_n + U_(n+1) for n <= {n}: {x1} of {} in X1, {x2} in X2",
                rows.len()
            );
            (summary, Some(rows))
        }
    };
    let consistent = b.checks.iter().all(|c| c.status != CheckStatus::Disagree);
    Ok(RemarkReport {
        id: id.into(),
        index_bound: n,
        problem,
        recurrence: rec,
        checks: b.checks,
        membership,
        summary,
        consistent,
    })
}

fn prefix_check(
    b: &mut Builder,
    problem: &NormFormProblem,
    name: &str,
    c: Coordinate,
    prefix: &[String],
    bound: &Option<String>,
) -> Result<()> {
    if prefix.is_empty() {
        return Ok(());
    }
    let bound = big(bound.as_deref().ok_or_else(|| missing("prefix bound"))?)?;
    let expected = prefix.iter().map(|s| big(s)).collect::<Result<Vec<_>>>()?;
    let observed = coordinate_set(problem, c, &bound, SolutionView::Nontrivial)?;
    let agrees = observed == expected;
    b.push(name, list(&expected), list(&observed), agrees);
    Ok(())
}

fn degeneracy_check(b: &mut Builder, rec: &LinearRecurrence) -> Result<String> {
    let expected = b
        .fixture
        .expected_degeneracy
        .clone()
        .ok_or_else(|| missing("expected_degeneracy"))?;
    let observed = is_degenerate(rec)?.describe();
    let agrees = observed == expected;
    b.push("degeneracy", &expected, &observed, agrees);
    Ok(observed)
}

fn even_numbers(
    b: &mut Builder,
    problem: &NormFormProblem,
    rec: &LinearRecurrence,
    n: u64,
) -> Result<String> {
    let f = b.fixture;
    if let Some(expected) = f.every_third_even {
        let bound = big(f
            .parity_bound
            .as_deref()
            .ok_or_else(|| missing("parity_bound"))?)?;
        let mut ok = true;
        let mut examined = 0;
        for c in [Coordinate::X, Coordinate::Y] {
            let set = coordinate_set(problem, c, &bound, SolutionView::Nontrivial)?;
            examined += set.len();
            for (i, v) in set.iter().enumerate() {
                let even = (v % 2u32).is_zero();
                ok &= even == ((i + 1) % 3 == 0);
            }
        }
        b.push(
            "every-third-term-even",
            format!("{expected}"),
            format!("{ok} over {examined} entries"),
            ok == expected,
        );
    }

    let terms = rec.terms_up_to(n as usize);
    let evens = terms
        .iter()
        .enumerate()
        .all(|(i, t)| *t == BigInt::from(2 * i as u64));
    b.push(
        "sequence",
        "U_n = 2n",
        if evens { "U_n = 2n" } else { "differs" },
        evens,
    );

    let roots = characteristic_roots(rec)?;
    let observed_roots: Vec<String> = roots
        .roots
        .iter()
        .zip(&roots.multiplicities)
        .map(|(r, m)| {
            format!(
                "{r} (multiplicity {m}, root of unity: {})",
                r.root_of_unity_order().is_some()
            )
        })
        .collect();
    let all_unity = roots
        .roots
        .iter()
        .all(|r| r.root_of_unity_order().is_some());
    b.push(
        "roots-are-roots-of-unity",
        "true",
        observed_roots.join("; "),
        all_unity,
    );
    let verdict = degeneracy_check(b, rec)?;

    let bound = big(b
        .fixture
        .pair_search_bound
        .as_deref()
        .ok_or_else(|| missing("pair_search_bound"))?)?;
    let report = pair_sum_search(rec, problem, n, &bound, &SearchOptions::default())?;
    let st = &report.stabilization;
    let observed = format!(
        "{} hits at N = {}, {} at N = {}",
        st.hits_at_half, st.half, st.hits_at_full, st.full
    );
    if st.hits_at_full > st.hits_at_half {
        b.push(
            "pair-hits-grow",
            "hit count increases with N",
            observed,
            true,
        );
    } else {
        b.push_inconclusive("pair-hits-grow", "hit count increases with N", observed);
    }
    Ok(format!(
        "sequence of even numbers; {verdict}; {} pair hits at N = {n}",
        report.hit_count
    ))
}

fn periodic(
    b: &mut Builder,
    problem: &NormFormProblem,
    rec: &LinearRecurrence,
    n: u64,
) -> Result<String> {
    let f = b.fixture;
    let period = f.period.clone().ok_or_else(|| missing("period"))?;
    let terms = rec.terms_up_to(n as usize);
    let confirmed = terms
        .iter()
        .enumerate()
        .all(|(i, t)| *t == BigInt::from(period[i % period.len()]));
    b.push(
        "period",
        format!("{period:?}"),
        if confirmed {
            format!("{period:?} for {} terms", terms.len())
        } else {
            "not periodic".into()
        },
        confirmed,
    );

    let member = big(f
        .member_of_x1
        .as_deref()
        .ok_or_else(|| missing("member_of_x1"))?)?;
    let partner = problem.partner_of_x(&member).filter(|y| !y.is_zero());
    b.push(
        "member-of-x1",
        format!("{member} in X1"),
        match &partner {
            Some(y) => format!("({member}, {y}) solves the equation"),
            None => format!("{member} is not in X1"),
        },
        partner.is_some(),
    );
    let verdict = degeneracy_check(b, rec)?;

    let bound = big(f
        .pair_search_bound
        .as_deref()
        .ok_or_else(|| missing("pair_search_bound"))?)?;
    let min_hits = f.min_pair_hits.ok_or_else(|| missing("min_pair_hits"))?;
    let report = pair_sum_search(rec, problem, n, &bound, &SearchOptions::default())?;
    let with_member = report.hits.iter().filter(|h| *h.sum() == member).count();
    b.push(
        "pair-hits",
        format!("at least {min_hits} pairs with sum {member}"),
        format!("{with_member} pairs"),
        with_member >= min_hits,
    );
    Ok(format!(
        "{}; {verdict}",
        if confirmed {
            "period confirmed"
        } else {
            "period not confirmed"
        }
    ))
}

fn pell_sums(
    b: &mut Builder,
    problem: &NormFormProblem,
    rec: &LinearRecurrence,
    n: u64,
) -> Result<Vec<MembershipRow>> {
    let f = b.fixture;
    let d = problem.d() as i64;
    let pell = problem.pell()?;

    let claimed = f
        .claimed_fundamental_unit
        .clone()
        .ok_or_else(|| missing("claimed_fundamental_unit"))?;
    let claimed_unit: Scalar = claimed.parse()?;
    let computed = pell.minimal_unit();
    let agrees = Scalar::from(computed.clone()) == claimed_unit;
    b.push("fundamental-unit", &claimed, computed.to_string(), agrees);

    let reps = class_representatives(problem)?;
    let expected_rep = f
        .representative
        .clone()
        .ok_or_else(|| missing("representative"))?;
    let expected_rep = (big(&expected_rep[0])?, big(&expected_rep[1])?);
    let orbit_unit: Scalar = f
        .orbit_unit
        .clone()
        .ok_or_else(|| missing("orbit_unit"))?
        .parse()?;
    let observed = reps
        .iter()
        .map(|o| {
            format!(
                "({}, {}) times powers of {}",
                o.representative().0,
                o.representative().1,
                o.automorph_unit()
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    let agrees = reps.len() == 1
        && reps[0].representative() == &expected_rep
        && Scalar::from(reps[0].automorph_unit()) == orbit_unit;
    b.push(
        "solution-parametrization",
        format!(
            "({}, {}) times powers of {}",
            expected_rep.0, expected_rep.1, orbit_unit
        ),
        observed,
        agrees,
    );

    let k_terms = f
        .x2_formula_terms
        .ok_or_else(|| missing("x2_formula_terms"))?;
    let eta = QuadNum::from_ints(1, 1, d)?;
    let two_root = QuadNum::from_ints(0, 2, d)?;
    let formula = (0..k_terms as i64)
        .map(|k| {
            let p = eta.pow(2 * k + 1)?;
            let v = p.checked_sub(&p.conj())?.checked_div(&two_root)?;
            Scalar::from(v)
                .as_integer()
                .ok_or_else(|| Error::InvariantViolation("closed form is not an integer".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let last = formula.last().cloned().unwrap_or_else(BigInt::one);
    let x2 = coordinate_set(problem, Coordinate::Y, &last, SolutionView::Nontrivial)?;
    b.push("x2-closed-form", list(&formula), list(&x2), x2 == formula);

    let form = binet(rec)?;
    let roots = f
        .binet_roots
        .clone()
        .ok_or_else(|| missing("binet_roots"))?;
    let roots = [roots[0].parse::<Scalar>()?, roots[1].parse::<Scalar>()?];
    let coeff: Scalar = f
        .binet_coefficient
        .clone()
        .ok_or_else(|| missing("binet_coefficient"))?
        .parse()?;
    let agrees = form.roots == roots && form.coeffs[0] == coeff && form.coeffs[1] == coeff.neg();
    b.push(
        "binet-form",
        format!("roots {}, {}; f1 = {coeff}, f2 = -f1", roots[0], roots[1]),
        format!(
            "roots {}, {}; f1 = {}, f2 = {}",
            form.roots[0], form.roots[1], form.coeffs[0], form.coeffs[1]
        ),
        agrees,
    );

    let [p, q] = f
        .dependence_witness
        .ok_or_else(|| missing("dependence_witness"))?;
    let verdict = roots_multiplicatively_independent(&form.roots[0], &form.roots[1], 5)?;
    let observed = match &verdict {
        Independence::Dependent { witness } => {
            format!("dependent, witness ({}, {})", witness.p, witness.q)
        }
        Independence::IndependentUpTo { bound } => format!("independent up to {bound}"),
    };
    let agrees =
        matches!(verdict, Independence::Dependent { witness } if witness.p == p && witness.q == q);
    b.push(
        "roots-dependent",
        format!("dependent, witness ({p}, {q})"),
        observed,
        agrees,
    );

    let terms = rec.terms_up_to(n as usize + 1);
    let sums: Vec<BigInt> = terms.windows(2).map(|w| &w[0] + &w[1]).collect();
    let bound = sums.iter().max().cloned().unwrap_or_else(BigInt::one);
    let index = CoordinateIndex::build(problem, &bound)?;
    let rows: Vec<MembershipRow> = sums
        .into_iter()
        .enumerate()
        .map(|(i, sum)| MembershipRow {
            n: i as u64,
            in_x1: index.contains(Coordinate::X, &sum),
            in_x2: index.contains(Coordinate::Y, &sum),
            sum,
        })
        .collect();
    let set = f
        .claimed_membership_set
        .ok_or_else(|| missing("claimed_membership_set"))?;
    let in_claimed = |r: &MembershipRow| if set == 1 { r.in_x1 } else { r.in_x2 };
    let holds: Vec<u64> = rows.iter().filter(|r| in_claimed(r)).map(|r| r.n).collect();
    let all_x1 = rows.iter().all(|r| r.in_x1);
    b.push(
        "consecutive-sums-in-x2",
        format!("U_n + U_(n+1) in X{set} for 0 <= n <= {n}"),
        format!(
            "in X{set} only for n in {holds:?}; in X1 for {}",
            if all_x1 {
                "every n".to_string()
            } else {
                "some n".to_string()
            }
        ),
        holds.len() == rows.len(),
    );
    Ok(rows)
}

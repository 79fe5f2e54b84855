use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use normsum_core::norm_form::{
    certify_orbits, class_representatives, coordinate_set, solutions_within, Coordinate,
    NormFormProblem, SolutionView,
};
use normsum_core::quadratic::pell_data;
use normsum_core::recurrence::{binet, is_degenerate, Independence};
use normsum_core::search::{
    audit_hypotheses, pair_sum_search, partition_analysis, schlickewei_bound,
    schlickewei_parameter, sunit_sum_search, vanishing_pair_sums, verify_remark, BoundValue,
    CheckStatus, Hit, HypothesisReport, SearchOptions, SearchReport,
};
use normsum_core::{Error, Result};

use crate::Command;

/// Lines of summary shown for long lists before eliding the rest.
const SHOWN: usize = 12;

pub(crate) struct Output {
    pub result: Value,
    pub summary: Vec<String>,
    /// Set when the command ran but a check disagreed.
    pub inconsistency: Option<String>,
}

impl Output {
    fn ok(result: Value, summary: Vec<String>) -> Self {
        Self {
            result,
            summary,
            inconsistency: None,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::InvariantViolation(format!("serialization: {e}")))
}

fn pair(p: &(BigInt, BigInt)) -> String {
    format!("({}, {})", p.0, p.1)
}

fn equation(p: &NormFormProblem) -> String {
    format!("x^2 - {}y^2 = {}", p.d(), p.m())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn elide(items: Vec<String>, total: usize) -> Vec<String> {
    let mut out: Vec<String> = items
        .into_iter()
        .take(SHOWN)
        .map(|s| format!("  {s}"))
        .collect();
    if total > SHOWN {
        out.push(format!("  ... {} more", total - SHOWN));
    }
    out
}

pub(crate) fn execute(cmd: &Command, shards: usize) -> Result<Output> {
    match cmd {
        Command::Pell(a) => {
            let data = pell_data(a.d)?;
            let mut summary = vec![
                format!(
                    "x^2 - {}y^2 = 1: fundamental solution {}",
                    a.d,
                    pair(&data.fundamental)
                ),
                match &data.negative {
                    Some(p) => format!("x^2 - {}y^2 = -1: fundamental solution {}", a.d, pair(p)),
                    None => format!("x^2 - {}y^2 = -1: no solution", a.d),
                },
            ];
            summary.push(format!(
                "t^2 - {}u^2 = 4: minimal solution {}",
                a.d,
                pair(&data.automorph)
            ));
            summary.push(format!(
                "continued fraction of sqrt({}): [{}; {:?}], period {}",
                a.d,
                data.continued_fraction.a0,
                data.continued_fraction.period,
                data.cf_period()
            ));
            Ok(Output::ok(to_value(&data)?, summary))
        }

        Command::SolveNorm(a) => {
            let p = a.problem.problem()?;
            let classes = class_representatives(&p)?;
            let solutions: Vec<(BigInt, BigInt)> = solutions_within(&p, &BigInt::from(a.bound))?
                .into_iter()
                .filter(|(x, y)| x >= &BigInt::from(0) && y >= &BigInt::from(0))
                .collect();
            let mut summary = vec![format!(
                "{}: {} solution class(es)",
                equation(&p),
                classes.len()
            )];
            for (k, c) in classes.iter().enumerate() {
                summary.push(format!(
                    "  class {}: representative {}, automorph (t, u) = {}",
                    k + 1,
                    pair(c.representative()),
                    pair(c.automorph())
                ));
            }
            summary.push(format!(
                "{} nonnegative solution(s) with x <= {}",
                solutions.len(),
                a.bound
            ));
            summary.extend(elide(solutions.iter().map(pair).collect(), solutions.len()));
            let mut result = json!({
                "problem": to_value(&p)?,
                "classes": to_value(&classes)?,
                "solutions": solutions.iter().map(|(x, y)| vec![x.to_string(), y.to_string()]).collect::<Vec<_>>(),
            });
            if a.certify {
                let cert = certify_orbits(&p, a.bound)?;
                if !cert.passed() {
                    return Err(Error::InvariantViolation(format!(
                        "orbit generation and direct scan differ in {} solution(s) with |x| <= {}",
                        cert.mismatches, a.bound
                    )));
                }
                summary.push(format!(
                    "certified: orbits reproduce all {} signed solutions with |x| <= {}",
                    cert.solutions, a.bound
                ));
                result["certification"] = to_value(&cert)?;
            }
            Ok(Output::ok(result, summary))
        }

        Command::Coords(a) => {
            let p = a.problem.problem()?;
            let c = Coordinate::from_index(a.coord)?;
            let view = if a.all {
                SolutionView::All
            } else {
                SolutionView::Nontrivial
            };
            let values = coordinate_set(&p, c, &a.bound, view)?;
            let listed: Vec<String> = values.iter().map(ToString::to_string).collect();
            let summary = vec![
                format!(
                    "X{} of {} up to {}: {} value(s)",
                    a.coord,
                    equation(&p),
                    a.bound,
                    values.len()
                ),
                format!("[{}]", listed.join(", ")),
            ];
            let result = json!({
                "problem": to_value(&p)?,
                "coordinate": a.coord,
                "view": to_value(&view)?,
                "values": listed,
            });
            Ok(Output::ok(result, summary))
        }

        Command::Recur(a) => {
            let n = usize::try_from(a.n).map_err(|_| Error::InvalidInput("n too large".into()))?;
            let terms = a.rec.terms_up_to(n);
            let degeneracy = match is_degenerate(&a.rec) {
                Ok(d) => Some(d),
                Err(Error::UnsupportedOrder(_)) => None,
                Err(e) => return Err(e),
            };
            let listed: Vec<String> = terms.iter().map(ToString::to_string).collect();
            let mut summary = vec![
                format!("recurrence {} (order {})", a.rec, a.rec.order()),
                format!("U_0..U_{}: {}", a.n, listed.join(", ")),
            ];
            summary.push(match &degeneracy {
                Some(d) => d.describe(),
                None => "degeneracy: roots not available exactly".into(),
            });
            let mut result = json!({ "recurrence": to_value(&a.rec)?, "terms": listed });
            if let Some(d) = &degeneracy {
                result["degeneracy"] = to_value(d)?;
            }
            Ok(Output::ok(result, summary))
        }

        Command::Binet(a) => {
            let form = binet(&a.rec)?;
            let n = usize::try_from(a.n).map_err(|_| Error::InvalidInput("n too large".into()))?;
            let terms = a.rec.terms_up_to(n);
            for (k, t) in terms.iter().enumerate() {
                let v = form.eval(k as u64)?;
                if v.as_integer().as_ref() != Some(t) {
                    return Err(Error::InvariantViolation(format!(
                        "Binet form gives {v} at n = {k}, iteration gives {t}"
                    )));
                }
            }
            let summary = vec![
                format!("U_n = f1*a^n + f2*b^n for {}", a.rec),
                format!("roots: a = {}, b = {}", form.roots[0], form.roots[1]),
                format!(
                    "coefficients: f1 = {}, f2 = {}",
                    form.coeffs[0], form.coeffs[1]
                ),
                format!("agrees with direct iteration for n <= {}", a.n),
            ];
            let result = json!({ "binet": to_value(&form)?, "checked_through": a.n });
            Ok(Output::ok(result, summary))
        }

        Command::Hypotheses(a) => {
            let report = audit_hypotheses(&a.rec, a.e)?;
            let summary = hypothesis_lines(&report);
            Ok(Output::ok(to_value(&report)?, summary))
        }

        Command::PairsSearch(a) => {
            let p = a.problem.problem()?;
            let opts = SearchOptions {
                shards,
                independence_bound: a.independence_bound,
            };
            let report = pair_sum_search(&a.rec, &p, a.n, &a.bound, &opts)?;
            let mut summary = vec![format!(
                "U_n1 + U_n2 in X1 or X2 of {} for {}, n1 <= n2 <= {}, sums <= {}",
                equation(&p),
                a.rec,
                a.n,
                a.bound
            )];
            summary.extend(search_lines(&report));
            if let Some(h) = &report.hypotheses {
                summary.push(format!(
                    "all hypotheses hold: {}",
                    yes(h.all_hypotheses_hold)
                ));
            }
            Ok(Output::ok(to_value(&report)?, summary))
        }

        Command::SunitSearch(a) => {
            let p = a.problem.problem()?;
            let opts = SearchOptions {
                shards,
                ..SearchOptions::default()
            };
            let report = sunit_sum_search(
                &a.primes,
                a.t as usize,
                a.e,
                a.positive_only,
                &p,
                &a.bound,
                &opts,
            )?;
            let mut summary = vec![format!(
                "sums of {} S-units over S = {}, exponents in [-{}, {}], in X1 or X2 of {} up to {}",
                a.t,
                a.primes,
                a.e,
                a.e,
                equation(&p),
                a.bound
            )];
            summary.extend(search_lines(&report));
            Ok(Output::ok(to_value(&report)?, summary))
        }

        Command::Vanishing(a) => {
            let sums = vanishing_pair_sums(&a.rec, a.n)?;
            let mut summary = vec![format!(
                "{} vanishing subsum(s) of U_n1 + U_n2 for {}, n1 <= n2 <= {}",
                sums.len(),
                a.rec,
                a.n
            )];
            let rows = sums
                .iter()
                .map(|s| format!("(n1, n2) = ({}, {}), roots {:?}", s.n1, s.n2, s.subset))
                .collect();
            summary.extend(elide(rows, sums.len()));
            let result = json!({ "recurrence": to_value(&a.rec)?, "index_bound": a.n, "vanishing": to_value(&sums)? });
            Ok(Output::ok(result, summary))
        }

        Command::Bound(a) => {
            let param = schlickewei_parameter(a.s, &a.degrees)?;
            let value = schlickewei_bound(a.s, &a.degrees, a.field_degree)?;
            let line = match &value {
                BoundValue::Exact { value, digits } => format!("bound = {value} ({digits} digits)"),
                BoundValue::Large {
                    digits,
                    digits_exact,
                    leading_digits,
                } => format!(
                    "bound has {}{} digits, leading digits {}",
                    if *digits_exact { "" } else { "about " },
                    digits,
                    leading_digits
                ),
            };
            let summary = vec![format!("A = {param}"), line];
            let result = json!({ "parameter": param.to_string(), "bound": to_value(&value)? });
            Ok(Output::ok(result, summary))
        }

        Command::Partitions(a) => {
            let analysis = partition_analysis(&a.bases, a.e)?;
            let mut summary = vec![format!(
                "{} set partitions of {} bases, dependence searched up to exponent {}",
                analysis.partition_count,
                a.bases.len(),
                a.e
            )];
            let rows = analysis
                .partitions
                .iter()
                .map(|p| {
                    let blocks: Vec<String> = p
                        .blocks
                        .iter()
                        .map(|b| {
                            format!(
                                "{{{}}}",
                                b.iter()
                                    .map(ToString::to_string)
                                    .collect::<Vec<_>>()
                                    .join(",")
                            )
                        })
                        .collect();
                    let verdict = to_value(&p.verdict)
                        .ok()
                        .and_then(|v| v.as_str().map(str::to_string))
                        .unwrap_or_default();
                    format!(
                        "{}: {}",
                        blocks.join(" "),
                        verdict.replace("-E", &format!("-{}", a.e))
                    )
                })
                .collect();
            summary.extend(elide(rows, analysis.partition_count));
            Ok(Output::ok(to_value(&analysis)?, summary))
        }

        Command::VerifyRemark(a) => {
            let report = verify_remark(&a.id, a.n)?;
            let mut summary = vec![format!(
                "fixture {} up to n = {}: {}",
                report.id, a.n, report.summary
            )];
            for c in &report.checks {
                let status = match c.status {
                    CheckStatus::Agree => "agree",
                    CheckStatus::KnownDiscrepancy => "known discrepancy",
                    CheckStatus::Inconclusive => "inconclusive at this bound",
                    CheckStatus::Disagree => "DISAGREE",
                };
                summary.push(format!(
                    "  {}: {} (observed {})",
                    c.name, status, c.observed
                ));
            }
            let inconsistency = (!report.consistent)
                .then(|| format!("fixture {} disagrees with the computation", report.id));
            Ok(Output {
                result: to_value(&report)?,
                summary,
                inconsistency,
            })
        }
    }
}

fn hypothesis_lines(h: &HypothesisReport) -> Vec<String> {
    let roots: Vec<String> = h.roots.iter().map(ToString::to_string).collect();
    let mut out = vec![
        format!("recurrence {}: roots {}", h.recurrence, roots.join(", ")),
        format!(
            "nondegenerate: {} ({})",
            yes(h.nondegenerate),
            h.degeneracy.describe()
        ),
    ];
    let witnesses: Vec<String> = h
        .pairwise_independent
        .pairs
        .iter()
        .filter_map(|p| match &p.verdict {
            Independence::Dependent { witness } => {
                Some(format!("roots {},{}: {witness}", p.i, p.j))
            }
            Independence::IndependentUpTo { .. } => None,
        })
        .collect();
    out.push(format!(
        "pairwise independent up to exponent {}: {}{}",
        h.pairwise_independent.exponent_bound,
        yes(h.pairwise_independent.passed),
        if witnesses.is_empty() {
            String::new()
        } else {
            format!(" ({})", witnesses.join("; "))
        }
    ));
    out.push(format!(
        "no root is a root of unity: {}",
        yes(h.no_root_of_unity_root.passed)
    ));
    out.push(format!("|a_d| != 1: {}", yes(h.last_coeff_not_unit)));
    out.push(format!(
        "all hypotheses hold: {}",
        yes(h.all_hypotheses_hold)
    ));
    out
}

fn search_lines(r: &SearchReport) -> Vec<String> {
    let mut out = vec![format!(
        "coordinate sets: |X1| = {}, |X2| = {}; hits: {}",
        r.coordinate_set_sizes[0], r.coordinate_set_sizes[1], r.hit_count
    )];
    let rows = r
        .hits
        .iter()
        .map(|h| {
            let head = match h {
                Hit::Pair(p) => format!("(n1, n2) = ({}, {})", p.n1, p.n2),
                Hit::SUnit(s) => {
                    let units: Vec<String> = s.units.iter().map(|u| u.value.to_string()).collect();
                    format!("{{{}}}", units.join(", "))
                }
            };
            let sets: Vec<String> = h
                .witnesses()
                .iter()
                .map(|w| format!("X{} via {}", w.set, pair(&w.solution)))
                .collect();
            format!("{head} -> {} in {}", h.sum(), sets.join(", "))
        })
        .collect();
    out.extend(elide(rows, r.hit_count));
    let s = &r.stabilization;
    out.push(format!(
        "stabilization: {} hit(s) at {} = {}, {} at {} = {} ({})",
        s.hits_at_half,
        s.parameter,
        s.half,
        s.hits_at_full,
        s.parameter,
        s.full,
        if s.stable { "stable" } else { "still growing" }
    ));
    out
}

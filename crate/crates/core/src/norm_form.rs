//! Solution sets of `N(x + y√d) = x² − d·y² = m` as finite unions of
//! automorph orbits.
//!
//! Every solution is reached from exactly one canonical representative by the
//! step map `(x, y) ↦ ((t·x + d·u·y)/2, (u·x + t·y)/2)`, its inverse, and the
//! sign changes `(±x, ±y)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadratic::{check_real_field, pell_data, PellData, QuadNum, Scalar};
use crate::recurrence::{MultiRecurrence, MultiTerm, Polynomial};
use crate::serde_big;

pub type Pair = (BigInt, BigInt);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Coordinate {
    /// Coefficient of 1.
    X,
    /// Coefficient of √d.
    Y,
}

impl Coordinate {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Coordinate::X),
            2 => Ok(Coordinate::Y),
            _ => Err(Error::InvalidInput(format!(
                "coordinate must be 1 or 2, got {i}"
            ))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Coordinate::X => 1,
            Coordinate::Y => 2,
        }
    }

    fn of(self, p: &Pair) -> &BigInt {
        match self {
            Coordinate::X => &p.0,
            Coordinate::Y => &p.1,
        }
    }
}

/// Which solutions feed a coordinate set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionView {
    /// Solutions with both coordinates nonzero. Reproduces the listed sets,
    /// e.g. `X₁ = {11, 119, ...}` for `x² − 13y² = 4`.
    #[default]
    Nontrivial,
    /// Every integral solution, including ones like `(2, 0)`.
    All,
}

impl SolutionView {
    fn admits(self, p: &Pair) -> bool {
        match self {
            SolutionView::All => true,
            SolutionView::Nontrivial => !p.0.is_zero() && !p.1.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormFormProblem {
    d: u64,
    m: i64,
}

impl NormFormProblem {
    pub fn new(d: u64, m: i64) -> Result<Self> {
        check_real_field(d)?;
        if m == 0 {
            return Err(Error::InvalidInput("m must be nonzero".into()));
        }
        Ok(Self { d, m })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn is_solution(&self, x: &BigInt, y: &BigInt) -> bool {
        x * x - BigInt::from(self.d) * y * y == BigInt::from(self.m)
    }

    /// Returns a partner `y ≥ 0` with `x² − d·y² = m`, if any.
    pub fn partner_of_x(&self, x: &BigInt) -> Option<BigInt> {
        let rest = x * x - BigInt::from(self.m);
        if rest.is_negative() || !(&rest % BigInt::from(self.d)).is_zero() {
            return None;
        }
        exact_sqrt(&(rest / BigInt::from(self.d)))
    }

    /// Returns a partner `x ≥ 0` with `x² − d·y² = m`, if any.
    pub fn partner_of_y(&self, y: &BigInt) -> Option<BigInt> {
        let v = BigInt::from(self.m) + BigInt::from(self.d) * y * y;
        if v.is_negative() {
            return None;
        }
        exact_sqrt(&v)
    }

    /// Partner coordinate of `value` read as coordinate `c`.
    pub fn partner(&self, c: Coordinate, value: &BigInt) -> Option<BigInt> {
        match c {
            Coordinate::X => self.partner_of_x(value),
            Coordinate::Y => self.partner_of_y(value),
        }
    }

    pub fn pell(&self) -> Result<PellData> {
        pell_data(self.d)
    }
}

pub(crate) fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The automorph whose step map keeps every solution of `x² − d·y² = m`
/// integral: the minimal `(t, u)` with `t² − d·u² = 4`, unless it is
/// half-integral and `m` is not divisible by 4, in which case its cube
/// `(2x₁, 2y₁)` is used.
pub fn orbit_automorph(pell: &PellData, m: i64) -> Pair {
    if pell.automorph_is_half_integral() && m % 4 != 0 {
        let (x, y) = &pell.fundamental;
        (x * 2, y * 2)
    } else {
        pell.automorph.clone()
    }
}

/// One class of solutions under the automorph group, conjugation and sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionOrbit {
    problem: NormFormProblem,
    #[serde(serialize_with = "serde_big::pair")]
    representative: Pair,
    #[serde(serialize_with = "serde_big::pair")]
    automorph: Pair,
}

impl SolutionOrbit {
    /// Builds the orbit through `(x, y)` without canonicalizing it.
    pub fn through(problem: &NormFormProblem, x: BigInt, y: BigInt) -> Result<Self> {
        if !problem.is_solution(&x, &y) {
            return Err(Error::InvalidInput(format!(
                "({x}, {y}) does not solve x^2 - {}y^2 = {}",
                problem.d, problem.m
            )));
        }
        let pell = problem.pell()?;
        Ok(Self {
            automorph: orbit_automorph(&pell, problem.m),
            problem: problem.clone(),
            representative: (x, y),
        })
    }

    pub fn representative(&self) -> &Pair {
        &self.representative
    }

    pub fn automorph(&self) -> &Pair {
        &self.automorph
    }

    pub fn problem(&self) -> &NormFormProblem {
        &self.problem
    }

    /// `(t + u√d)/2` as a field element.
    pub fn automorph_unit(&self) -> QuadNum {
        QuadNum::half_integral(&self.automorph.0, &self.automorph.1, self.problem.d as i64)
            .expect("validated field")
    }

    pub fn sign_class(p: &Pair) -> [Pair; 4] {
        let (x, y) = p;
        [
            (x.clone(), y.clone()),
            (-x, y.clone()),
            (x.clone(), -y),
            (-x, -y),
        ]
    }

    fn apply(&self, p: &Pair, inverse: bool) -> Result<Pair> {
        let (t, u) = &self.automorph;
        let u = if inverse { -u } else { u.clone() };
        let d = BigInt::from(self.problem.d);
        let nx = t * &p.0 + &d * &u * &p.1;
        let ny = &u * &p.0 + t * &p.1;
        if nx.is_odd() || ny.is_odd() {
            return Err(Error::InvariantViolation(format!(
                "step map left the integers at ({}, {})",
                p.0, p.1
            )));
        }
        let next = (nx / 2, ny / 2);
        debug_assert!(self.problem.is_solution(&next.0, &next.1));
        Ok(next)
    }

    /// Multiplication by the automorph unit.
    pub fn step(&self, p: &Pair) -> Result<Pair> {
        self.apply(p, false)
    }

    /// Multiplication by the inverse automorph unit.
    pub fn step_back(&self, p: &Pair) -> Result<Pair> {
        self.apply(p, true)
    }

    /// `representative · ε^a` with signs kept.
    pub fn element(&self, a: i64) -> Result<Pair> {
        let mut cur = self.representative.clone();
        for _ in 0..a.unsigned_abs() {
            cur = if a >= 0 {
                self.step(&cur)?
            } else {
                self.step_back(&cur)?
            };
        }
        Ok(cur)
    }

    /// Every `(|x|, |y|)` in the orbit whose coordinate `c` is at most `bound`
    /// in absolute value, sorted.
    pub fn elements_within(&self, c: Coordinate, bound: &BigInt) -> Result<Vec<Pair>> {
        let mut out = BTreeSet::new();
        let start = abs_pair(&self.representative);
        if c.of(&start) <= bound {
            out.insert(start.clone());
        }
        for inverse in [false, true] {
            let mut cur = self.representative.clone();
            loop {
                let next = self.apply(&cur, inverse)?;
                let prev_mag = c.of(&cur).abs();
                let next_abs = abs_pair(&next);
                let mag = c.of(&next_abs).clone();
                if &mag <= bound {
                    out.insert(next_abs);
                } else if mag > prev_mag {
                    // each coordinate is unimodal along the orbit
                    break;
                }
                cur = next;
            }
        }
        Ok(out.into_iter().collect())
    }
}

fn abs_pair(p: &Pair) -> Pair {
    (p.0.abs(), p.1.abs())
}

/// Canonical member of the class of `p`: minimal nonzero `|y|`, then minimal
/// `|x|`, returned with nonnegative coordinates.
fn canonicalize(orbit: &SolutionOrbit, p: &Pair) -> Result<Pair> {
    let mag = |q: &Pair| q.1.abs();
    let mut cur = p.clone();
    for inverse in [true, false] {
        loop {
            let next = orbit.apply(&cur, inverse)?;
            if mag(&next) < mag(&cur) {
                cur = next;
            } else {
                break;
            }
        }
    }
    let mut window = vec![cur.clone()];
    for inverse in [false, true] {
        let mut q = cur.clone();
        for _ in 0..2 {
            q = orbit.apply(&q, inverse)?;
            window.push(q.clone());
        }
    }
    window
        .into_iter()
        .map(|q| abs_pair(&q))
        .filter(|q| !q.1.is_zero())
        .min_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)))
        .ok_or_else(|| Error::InvariantViolation("orbit has no element with y != 0".into()))
}

/// Upper bound on the smallest `|y|` in any class (Nagell's bound for the
/// unit `(T + U√d)/2`), plus one for safety.
fn representative_y_bound(m: i64, automorph: &Pair) -> BigInt {
    let (t, u) = automorph;
    let num: BigInt = u * u * BigInt::from(m.unsigned_abs());
    let two = BigInt::from(2);
    let den: BigInt = if m > 0 {
        (t + &two) * 4u32
    } else {
        (t - &two) * 4u32
    };
    (num / den).sqrt() + 1u32
}

/// All classes of solutions, one canonical representative each, sorted by
/// representative. An empty list means the equation has no solutions.
pub fn class_representatives(p: &NormFormProblem) -> Result<Vec<SolutionOrbit>> {
    let pell = p.pell()?;
    let automorph = orbit_automorph(&pell, p.m);
    let ybound = representative_y_bound(p.m, &automorph);
    let mut reps = BTreeSet::new();
    let mut y = BigInt::zero();
    while y <= ybound {
        if let Some(x) = p.partner_of_y(&y) {
            let seed = SolutionOrbit {
                problem: p.clone(),
                representative: (x.clone(), y.clone()),
                automorph: automorph.clone(),
            };
            reps.insert(canonicalize(&seed, &(x, y.clone()))?);
        }
        y += 1;
    }
    Ok(reps
        .into_iter()
        .map(|representative| SolutionOrbit {
            problem: p.clone(),
            representative,
            automorph: automorph.clone(),
        })
        .collect())
}

/// Sorted, deduplicated absolute values of coordinate `c` over all solutions
/// admitted by `view`, up to `bound`.
pub fn coordinate_set(
    p: &NormFormProblem,
    c: Coordinate,
    bound: &BigInt,
    view: SolutionView,
) -> Result<Vec<BigInt>> {
    let mut out = BTreeSet::new();
    for orbit in class_representatives(p)? {
        for e in orbit.elements_within(c, bound)? {
            if view.admits(&e) {
                out.insert(c.of(&e).clone());
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// All signed solutions with `|x| ≤ bound`, generated from the orbits.
pub fn solutions_within(p: &NormFormProblem, bound: &BigInt) -> Result<BTreeSet<Pair>> {
    let mut out = BTreeSet::new();
    for orbit in class_representatives(p)? {
        for e in orbit.elements_within(Coordinate::X, bound)? {
            out.extend(SolutionOrbit::sign_class(&e));
        }
    }
    Ok(out)
}

/// Signed solutions with `|x| ≤ bound` by direct scan over `x`.
pub fn exhaustive_solutions(p: &NormFormProblem, bound: u64) -> BTreeSet<Pair> {
    let mut out = BTreeSet::new();
    let (d, m) = (p.d as i128, p.m as i128);
    for x in 0..=bound as i128 {
        let rest = x * x - m;
        if rest < 0 || rest % d != 0 {
            continue;
        }
        let y2 = (rest / d) as u128;
        let y = y2.isqrt();
        if y * y == y2 {
            out.extend(SolutionOrbit::sign_class(&(
                BigInt::from(x),
                BigInt::from(y),
            )));
        }
    }
    out
}

/// Result of comparing orbit generation against an exhaustive scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub x_bound: u64,
    pub classes: usize,
    pub solutions: usize,
    pub mismatches: usize,
}

impl Certification {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

pub fn certify_orbits(p: &NormFormProblem, x_bound: u64) -> Result<Certification> {
    let generated = solutions_within(p, &BigInt::from(x_bound))?;
    let scanned = exhaustive_solutions(p, x_bound);
    Ok(Certification {
        x_bound,
        classes: class_representatives(p)?.len(),
        solutions: scanned.len(),
        mismatches: generated.symmetric_difference(&scanned).count(),
    })
}

/// `coordinate(representative · ε^a) = c1·ε^a + c2·ε̄^a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitPowerForm {
    pub c1: QuadNum,
    pub c2: QuadNum,
    pub eps: QuadNum,
    pub coordinate: Coordinate,
}

pub fn unit_power_form(
    p: &NormFormProblem,
    orbit: &SolutionOrbit,
    c: Coordinate,
) -> Result<UnitPowerForm> {
    if orbit.problem != *p {
        return Err(Error::InvalidInput(
            "orbit belongs to a different problem".into(),
        ));
    }
    let d = p.d as i64;
    let (x, y) = &orbit.representative;
    let mu = QuadNum::new(x.clone().into(), y.clone().into(), d)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let c1 = match c {
        Coordinate::X => mu.scale(&half),
        Coordinate::Y => mu.scale(&half).checked_div(&QuadNum::sqrt_d(d)?)?,
    };
    let eps = orbit.automorph_unit();
    Ok(UnitPowerForm {
        c2: c1.conj(),
        c1,
        eps,
        coordinate: c,
    })
}

impl UnitPowerForm {
    pub fn eval(&self, a: i64) -> Result<BigInt> {
        let v = self
            .c1
            .checked_mul(&self.eps.pow(a)?)?
            .checked_add(&self.c2.checked_mul(&self.eps.conj().pow(a)?)?)?;
        if !v.is_rational() || !v.x().is_integer() {
            return Err(Error::InvariantViolation(format!(
                "unit power form evaluated to non-integer {v} at a = {a}"
            )));
        }
        Ok(v.x().to_integer())
    }

    /// The same parametrization as a one-variable multi-recurrence.
    pub fn to_multi_recurrence(&self) -> Result<MultiRecurrence> {
        let term = |scale: &QuadNum, base: QuadNum| MultiTerm {
            poly: Polynomial::constant(1),
            scale: Scalar::from(scale.clone()),
            bases: vec![Scalar::from(base)],
        };
        MultiRecurrence::new(
            1,
            vec![
                term(&self.c1, self.eps.clone()),
                term(&self.c2, self.eps.conj()),
            ],
        )
    }
}

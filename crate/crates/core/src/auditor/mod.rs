//! Exact checks of the rationality postulates on finitely generated sets of
//! lotteries.
//!
//! Universal statements are checked over the mixture closure of the
//! generators (grid `k/D`, configurable depth), so a `Holds` verdict is
//! always relative to that finite domain. A `Fails` verdict carries a
//! [`Certificate`] with concrete lotteries that can be replayed through
//! the preference functions. Existential statements are decided exactly by
//! the [`solver`].
//!
//! Preference, mixtures and overrides depend on lotteries only through
//! their expected utilities, so the closure is reduced to one
//! representative per distinct value before the quantified checks.

pub mod lexicographic;
pub mod solver;

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexSet;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::acts::{act_prefers, act_utility, is_null, AaModel, Act};
use crate::error::{Error, Result};
use crate::nsreal::{NsReal, QOrdering};
use crate::pref::{
    compare_values, expected_utility, is_negligible, mix, mix_unchecked, mix_values,
    overrides_values, prefers, Lottery, PrefOrdering, Regime, UtilityAssignment,
};
use solver::{
    affine_relation_everywhere, affine_relation_witness, solve_affine_relation,
    solve_mixture_relation, RationalIntervalSet,
};

pub use lexicographic::{lexicographic_compare, lexicographic_mix, lexicographic_solve};

pub const DEFAULT_GRID: u32 = 8;
pub const DEFAULT_DEPTH: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Postulate {
    A1,
    A2,
    A3,
    B2,
    A2Prime,
    A3Prime,
    A3DoublePrime,
    Gamma,
    A4,
    A5Prime,
}

impl Postulate {
    pub const ALL: [Postulate; 10] = [
        Postulate::A1,
        Postulate::A2,
        Postulate::A3,
        Postulate::B2,
        Postulate::A2Prime,
        Postulate::A3Prime,
        Postulate::A3DoublePrime,
        Postulate::Gamma,
        Postulate::A4,
        Postulate::A5Prime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Postulate::A1 => "A1",
            Postulate::A2 => "A2",
            Postulate::A3 => "A3",
            Postulate::B2 => "B2",
            Postulate::A2Prime => "A'2",
            Postulate::A3Prime => "A'3",
            Postulate::A3DoublePrime => "A''3",
            Postulate::Gamma => "gamma",
            Postulate::A4 => "A4",
            Postulate::A5Prime => "A'5",
        }
    }

    pub fn from_name(name: &str) -> Option<Postulate> {
        Postulate::ALL.into_iter().find(|p| p.name() == name)
    }

    /// The postulates characterizing `regime`, plus the act postulates when
    /// acts are present.
    pub fn defaults(regime: Regime, with_acts: bool) -> Vec<Postulate> {
        use Postulate::*;
        let mut out = match regime {
            Regime::Std => vec![A1, A2, A3, Gamma],
            Regime::NsUtil => vec![A1, A2Prime, A3Prime, A3DoublePrime, Gamma],
            Regime::NsProb => vec![A1, A3, B2],
            Regime::Qualitative => vec![A1],
        };
        if with_acts {
            out.push(A4);
            if regime == Regime::NsUtil {
                out.push(A5Prime);
            }
        }
        out
    }
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Acts available to the act postulates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActSetup {
    pub model: AaModel,
    pub generators: Vec<Act>,
}

/// A finitely generated convex set of lotteries with a utility assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefStructure {
    pub regime: Regime,
    pub utilities: UtilityAssignment,
    pub generators: Vec<Lottery>,
    pub acts: Option<ActSetup>,
    pub grid: u32,
    pub depth: u32,
}

impl PrefStructure {
    pub fn new(
        regime: Regime,
        utilities: UtilityAssignment,
        generators: Vec<Lottery>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::PreconditionViolated("no generator lotteries".into()));
        }
        utilities.check_regime(regime)?;
        for g in &generators {
            g.check_regime(regime)?;
            expected_utility(g, &utilities)?;
        }
        Ok(PrefStructure {
            regime,
            utilities,
            generators,
            acts: None,
            grid: DEFAULT_GRID,
            depth: DEFAULT_DEPTH,
        })
    }

    pub fn with_grid(mut self, grid: u32) -> Result<Self> {
        if grid < 2 {
            return Err(Error::PreconditionViolated(format!(
                "grid denominator must be at least 2, got {grid}"
            )));
        }
        self.grid = grid;
        Ok(self)
    }

    pub fn with_depth(mut self, depth: u32) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_acts(mut self, model: AaModel, generators: Vec<Act>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::PreconditionViolated("no generator acts".into()));
        }
        for a in &generators {
            model.check_act(a)?;
            act_utility(a, &model)?;
        }
        self.acts = Some(ActSetup { model, generators });
        Ok(self)
    }

    /// Expected utility of `p` under the structure's assignment.
    pub fn value(&self, p: &Lottery) -> Result<NsReal> {
        expected_utility(p, &self.utilities)
    }

    fn cmp(&self, x: &NsReal, y: &NsReal) -> Result<PrefOrdering> {
        compare_values(x, y, self.regime)
    }

    fn grid_weights(&self) -> Vec<NsReal> {
        let d = i64::from(self.grid);
        (1..d).map(|k| NsReal::ratio(k, d)).collect()
    }

    fn require(&self, allowed: &[Regime], what: Postulate) -> Result<()> {
        if allowed.contains(&self.regime) {
            Ok(())
        } else {
            Err(Error::RegimeMismatch {
                expected: format!(
                    "{} for {what}",
                    allowed.iter().map(|r| r.tag()).collect::<Vec<_>>().join("|")
                ),
                found: self.regime.tag().to_string(),
            })
        }
    }

    fn require_unsigned(&self, what: Postulate) -> Result<()> {
        if self.utilities.is_signed() {
            return Err(Error::PreconditionViolated(format!(
                "{what} uses overrides, which needs non-negative utilities"
            )));
        }
        Ok(())
    }

    fn act_setup(&self) -> Result<&ActSetup> {
        self.acts.as_ref().ok_or(Error::MissingModel)
    }
}

/// Generators closed under `k/D` mixtures, `depth` times, deduplicated by
/// exact equality. The order is deterministic.
pub fn closure_of(generators: &[Lottery], grid: u32, depth: u32) -> Vec<Lottery> {
    let d = i64::from(grid);
    let weights: Vec<NsReal> = (1..d).map(|k| NsReal::ratio(k, d)).collect();
    let mut level: IndexSet<Lottery> = generators.iter().cloned().collect();
    for _ in 0..depth {
        let prev: Vec<Lottery> = level.iter().cloned().collect();
        for a in 0..prev.len() {
            for b in a + 1..prev.len() {
                for w in &weights {
                    level.insert(mix_unchecked(w, &prev[a], &prev[b]));
                }
            }
        }
    }
    level.into_iter().collect()
}

pub fn mixture_closure(s: &PrefStructure, depth: u32) -> Vec<Lottery> {
    closure_of(&s.generators, s.grid, depth)
}

/// One representative lottery per distinct expected utility.
#[derive(Debug, Clone)]
struct Point {
    lottery: Lottery,
    value: NsReal,
}

fn points(s: &PrefStructure) -> Result<Vec<Point>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for lottery in mixture_closure(s, s.depth) {
        let value = s.value(&lottery)?;
        if seen.insert(value.clone()) {
            out.push(Point { lottery, value });
        }
    }
    Ok(out)
}

/// A solved existential with the weight chosen from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRecord {
    pub p: Lottery,
    pub q: Lottery,
    pub r: Lottery,
    pub weights: RationalIntervalSet,
    pub chosen: BigRational,
}

/// A concrete violation of a postulate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `p > q` and `q > p`.
    Asymmetry { p: Lottery, q: Lottery },
    /// `p > q` but neither `p > r` nor `r > q`.
    NegativeTransitivity { p: Lottery, q: Lottery, r: Lottery },
    /// `p > q` (and the postulate's side condition) yet
    /// `λ·p + (1−λ)·r` is not preferred to `λ·q + (1−λ)·r`.
    Independence {
        postulate: Postulate,
        p: Lottery,
        q: Lottery,
        r: Lottery,
        lambda: NsReal,
        observed: PrefOrdering,
    },
    /// `p > q > r` (and the side condition) yet the required weight does
    /// not exist.
    NoWitness {
        postulate: Postulate,
        p: Lottery,
        q: Lottery,
        r: Lottery,
        wanted: QOrdering,
    },
    /// `a` and `b` agree off `state`, `a > b`, but `a(state)` is not
    /// preferred to `b(state)`.
    StateIndependence { a: Act, b: Act, state: String },
    /// The constant act at `act(state)` overrides `act`, yet `state` is not
    /// null.
    OverridingNonNullState { act: Act, state: String },
}

impl Certificate {
    pub fn postulate(&self) -> Postulate {
        match self {
            Certificate::Asymmetry { .. } | Certificate::NegativeTransitivity { .. } => {
                Postulate::A1
            }
            Certificate::Independence { postulate, .. }
            | Certificate::NoWitness { postulate, .. } => *postulate,
            Certificate::StateIndependence { .. } => Postulate::A4,
            Certificate::OverridingNonNullState { .. } => Postulate::A5Prime,
        }
    }

    /// Re-evaluates the violation from the lotteries and acts it names.
    /// Returns `true` when the violation is confirmed.
    pub fn replay(&self, s: &PrefStructure) -> Result<bool> {
        let u = &s.utilities;
        let pref = |a: &Lottery, b: &Lottery| prefers(a, b, u, s.regime);
        use PrefOrdering::Better;
        match self {
            Certificate::Asymmetry { p, q } => Ok(pref(p, q)? == Better && pref(q, p)? == Better),
            Certificate::NegativeTransitivity { p, q, r } => {
                Ok(pref(p, q)? == Better && pref(p, r)? != Better && pref(r, q)? != Better)
            }
            Certificate::Independence {
                postulate,
                p,
                q,
                r,
                lambda,
                observed,
            } => {
                if pref(p, q)? != Better {
                    return Ok(false);
                }
                match postulate {
                    Postulate::A2Prime => {
                        if overrides_values(&s.value(r)?, &s.value(p)?)? {
                            return Ok(false);
                        }
                    }
                    Postulate::B2 => {
                        if is_negligible(lambda, u, &s.generators)? {
                            return Ok(false);
                        }
                    }
                    _ => {}
                }
                let lhs = mix(lambda, p, r, s.regime)?;
                let rhs = mix(lambda, q, r, s.regime)?;
                let got = pref(&lhs, &rhs)?;
                Ok(got != Better && got == *observed)
            }
            Certificate::NoWitness {
                postulate,
                p,
                q,
                r,
                wanted,
            } => {
                if pref(p, q)? != Better || pref(q, r)? != Better {
                    return Ok(false);
                }
                let (vp, vq, vr) = (s.value(p)?, s.value(q)?, s.value(r)?);
                match postulate {
                    Postulate::A3DoublePrime if overrides_values(&vp, &vq)? => return Ok(false),
                    Postulate::Gamma => {
                        let beta = solve_mixture_relation(&vp, &vr, &vq, QOrdering::Less, s.regime)?;
                        if beta.is_empty() {
                            return Ok(false);
                        }
                    }
                    _ => {}
                }
                Ok(solve_mixture_relation(&vp, &vr, &vq, *wanted, s.regime)?.is_empty())
            }
            Certificate::StateIndependence { a, b, state } => {
                let setup = s.act_setup()?;
                let m = &setup.model;
                if !a.agrees_off(b, state) || act_prefers(a, b, m)? != Better {
                    return Ok(false);
                }
                let (la, lb) = (
                    a.at(state).ok_or_else(|| Error::UnknownState(state.clone()))?,
                    b.at(state).ok_or_else(|| Error::UnknownState(state.clone()))?,
                );
                Ok(prefers(la, lb, &m.utilities, m.regime)? != Better)
            }
            Certificate::OverridingNonNullState { act, state } => {
                let setup = s.act_setup()?;
                let m = &setup.model;
                let here = act.at(state).ok_or_else(|| Error::UnknownState(state.clone()))?;
                let x = expected_utility(here, &m.utilities)?;
                Ok(overrides_values(&x, &act_utility(act, m)?)?
                    && !is_null(state, m, &setup.generators)?)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No violation over `checked` instances of the finite domain.
    Holds {
        checked: usize,
        witness: Option<WitnessRecord>,
    },
    Fails(Box<Certificate>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Fails(c) => Some(c),
            Verdict::Holds { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub regime: Regime,
    /// Utilities and act model the verdicts were computed with, so that
    /// certificates can be evaluated when rendered.
    pub utilities: UtilityAssignment,
    pub act_model: Option<AaModel>,
    pub grid: u32,
    pub depth: u32,
    pub closure_size: usize,
    pub distinct_values: usize,
    pub entries: Vec<(Postulate, Verdict)>,
}

impl AuditReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.holds())
    }

    pub fn verdict(&self, p: Postulate) -> Option<&Verdict> {
        self.entries.iter().find(|(q, _)| *q == p).map(|(_, v)| v)
    }
}

/// Per-row result of a parallel sweep.
#[derive(Default)]
struct Row {
    checked: usize,
    failure: Option<Certificate>,
    witness: Option<WitnessRecord>,
}

/// Runs `f` on every row index in parallel and reports the failure of the
/// lowest row, so verdicts do not depend on scheduling.
fn sweep<F>(rows: usize, f: F) -> Result<Verdict>
where
    F: Fn(usize) -> Result<Row> + Sync,
{
    // rows run in parallel blocks; scanning each block in row order keeps
    // the reported failure independent of scheduling
    let block = rayon::current_num_threads().max(1) * 4;
    let mut checked = 0;
    let mut witness = None;
    for start in (0..rows).step_by(block) {
        let end = (start + block).min(rows);
        let results: Vec<Result<Row>> = (start..end).into_par_iter().map(&f).collect();
        for r in results {
            let r = r?;
            if let Some(c) = r.failure {
                return Ok(Verdict::Fails(Box::new(c)));
            }
            checked += r.checked;
            if witness.is_none() {
                witness = r.witness;
            }
        }
    }
    Ok(Verdict::Holds { checked, witness })
}

fn order_matrix(s: &PrefStructure, pts: &[Point]) -> Result<Vec<Vec<PrefOrdering>>> {
    pts.par_iter()
        .map(|a| pts.iter().map(|b| s.cmp(&a.value, &b.value)).collect())
        .collect()
}

/// `>` is asymmetric and negatively transitive over the closure.
pub fn check_a1(s: &PrefStructure) -> Result<Verdict> {
    let pts = points(s)?;
    let ord = order_matrix(s, &pts)?;
    let n = pts.len();
    use PrefOrdering::Better;
    sweep(n, |i| {
        let mut row = Row::default();
        for j in 0..n {
            row.checked += 1;
            if ord[i][j] == Better && ord[j][i] == Better {
                row.failure = Some(Certificate::Asymmetry {
                    p: pts[i].lottery.clone(),
                    q: pts[j].lottery.clone(),
                });
                return Ok(row);
            }
            if ord[i][j] != Better {
                continue;
            }
            for k in 0..n {
                row.checked += 1;
                if ord[i][k] != Better && ord[k][j] != Better {
                    row.failure = Some(Certificate::NegativeTransitivity {
                        p: pts[i].lottery.clone(),
                        q: pts[j].lottery.clone(),
                        r: pts[k].lottery.clone(),
                    });
                    return Ok(row);
                }
            }
        }
        Ok(row)
    })
}

/// Shared sweep for the independence postulates: for every `p > q`, every
/// `r`, and every weight in `weights` that `applies`, the mixtures with `r`
/// keep the strict preference.
fn independence<A>(
    s: &PrefStructure,
    postulate: Postulate,
    weights: &[NsReal],
    applies: A,
) -> Result<Verdict>
where
    A: Fn(&Point, &Point, &Point, &NsReal) -> Result<bool> + Sync,
{
    let pts = points(s)?;
    let ord = order_matrix(s, &pts)?;
    let n = pts.len();
    sweep(n, |i| {
        let mut row = Row::default();
        for j in (0..n).filter(|&j| ord[i][j] == PrefOrdering::Better) {
            for k in 0..n {
                for w in weights {
                    if !applies(&pts[i], &pts[j], &pts[k], w)? {
                        continue;
                    }
                    row.checked += 1;
                    let lhs = mix_values(w, &pts[i].value, &pts[k].value);
                    let rhs = mix_values(w, &pts[j].value, &pts[k].value);
                    let got = s.cmp(&lhs, &rhs)?;
                    if got != PrefOrdering::Better {
                        row.failure = Some(Certificate::Independence {
                            postulate,
                            p: pts[i].lottery.clone(),
                            q: pts[j].lottery.clone(),
                            r: pts[k].lottery.clone(),
                            lambda: w.clone(),
                            observed: got,
                        });
                        return Ok(row);
                    }
                }
            }
        }
        Ok(row)
    })
}

/// `p > q ⇒ λ·p + (1−λ)·r > λ·q + (1−λ)·r` for grid weights.
pub fn check_a2(s: &PrefStructure) -> Result<Verdict> {
    independence(s, Postulate::A2, &s.grid_weights(), |_, _, _, _| Ok(true))
}

/// `p > q, λ not negligible ⇒ λ·p + (1−λ)·r > λ·q + (1−λ)·r`, over grid
/// weights together with `ε`, `ε²`, `1/2 + ε` and `1 − ε`.
pub fn check_b2(s: &PrefStructure) -> Result<Verdict> {
    s.require(&[Regime::NsProb], Postulate::B2)?;
    let mut weights = vec![
        NsReal::eps(),
        NsReal::eps_pow(2),
        NsReal::ratio(1, 2) + NsReal::eps(),
        NsReal::one() - NsReal::eps(),
    ];
    weights.extend(s.grid_weights());
    let mut live = Vec::new();
    for w in weights {
        if !is_negligible(&w, &s.utilities, &s.generators)? {
            live.push(w);
        }
    }
    independence(s, Postulate::B2, &live, |_, _, _, _| Ok(true))
}

/// `p > q, r ≫̸ p ⇒ ∀λ ∈ (0, 1): λ·p + (1−λ)·r > λ·q + (1−λ)·r`, decided
/// exactly for all standard weights.
pub fn check_a2_prime(s: &PrefStructure) -> Result<Verdict> {
    s.require(&[Regime::NsUtil], Postulate::A2Prime)?;
    s.require_unsigned(Postulate::A2Prime)?;
    let pts = points(s)?;
    let ord = order_matrix(s, &pts)?;
    let n = pts.len();
    sweep(n, |i| {
        let mut row = Row::default();
        for j in (0..n).filter(|&j| ord[i][j] == PrefOrdering::Better) {
            for k in 0..n {
                if overrides_values(&pts[k].value, &pts[i].value)? {
                    continue;
                }
                row.checked += 1;
                let (p, q, r) = (&pts[i].value, &pts[j].value, &pts[k].value);
                if affine_relation_everywhere(p, r, q, r, QOrdering::Greater, s.regime)? {
                    continue;
                }
                let mut bad = None;
                for rel in [QOrdering::Equivalent, QOrdering::Less] {
                    let set = solve_affine_relation(p, r, q, r, rel, s.regime)?;
                    if let Some(w) = set.witness() {
                        bad = Some((w, rel));
                        break;
                    }
                }
                let (w, rel) = bad.ok_or_else(|| {
                    Error::AnalyticMismatch("solver sets do not cover (0, 1)".into())
                })?;
                row.failure = Some(Certificate::Independence {
                    postulate: Postulate::A2Prime,
                    p: pts[i].lottery.clone(),
                    q: pts[j].lottery.clone(),
                    r: pts[k].lottery.clone(),
                    lambda: NsReal::from_rational(w),
                    observed: rel.into(),
                });
                return Ok(row);
            }
        }
        Ok(row)
    })
}

/// Shared sweep over chains `p > q > r`: when `applies`, the set of weights
/// `α` with `compare(α·p + (1−α)·r, q) = wanted` must be non-empty.
fn existential<A>(
    s: &PrefStructure,
    postulate: Postulate,
    wanted: &[QOrdering],
    applies: A,
) -> Result<Verdict>
where
    A: Fn(&NsReal, &NsReal, &NsReal) -> Result<bool> + Sync,
{
    let pts = points(s)?;
    let ord = order_matrix(s, &pts)?;
    let n = pts.len();
    use PrefOrdering::Better;
    sweep(n, |i| {
        let mut row = Row::default();
        for j in (0..n).filter(|&j| ord[i][j] == Better) {
            for k in (0..n).filter(|&k| ord[j][k] == Better) {
                let (p, q, r) = (&pts[i].value, &pts[j].value, &pts[k].value);
                if !applies(p, q, r)? {
                    continue;
                }
                row.checked += 1;
                for rel in wanted {
                    match affine_relation_witness(p, r, q, q, *rel, s.regime)? {
                        Some(_) => {
                            if row.witness.is_none() {
                                let set = solve_mixture_relation(p, r, q, *rel, s.regime)?;
                                let chosen = set.witness().ok_or_else(|| {
                                    Error::AnalyticMismatch("witness outside solved set".into())
                                })?;
                                row.witness = Some(WitnessRecord {
                                    p: pts[i].lottery.clone(),
                                    q: pts[j].lottery.clone(),
                                    r: pts[k].lottery.clone(),
                                    weights: set,
                                    chosen,
                                });
                            }
                        }
                        None => {
                            row.failure = Some(Certificate::NoWitness {
                                postulate,
                                p: pts[i].lottery.clone(),
                                q: pts[j].lottery.clone(),
                                r: pts[k].lottery.clone(),
                                wanted: *rel,
                            });
                            return Ok(row);
                        }
                    }
                }
            }
        }
        Ok(row)
    })
}

/// `p > q > r ⇒ ∃α, β: α·p + (1−α)·r > q > β·p + (1−β)·r`.
pub fn check_a3(s: &PrefStructure) -> Result<Verdict> {
    existential(
        s,
        Postulate::A3,
        &[QOrdering::Greater, QOrdering::Less],
        |_, _, _| Ok(true),
    )
}

/// `p > q > r ⇒ ∃α: α·p + (1−α)·r > q`.
pub fn check_a3_prime(s: &PrefStructure) -> Result<Verdict> {
    s.require(&[Regime::NsUtil], Postulate::A3Prime)?;
    existential(s, Postulate::A3Prime, &[QOrdering::Greater], |_, _, _| {
        Ok(true)
    })
}

/// `p > q > r, p ≫̸ q ⇒ ∃β: q > β·p + (1−β)·r`.
pub fn check_a3_double_prime(s: &PrefStructure) -> Result<Verdict> {
    s.require(&[Regime::NsUtil], Postulate::A3DoublePrime)?;
    s.require_unsigned(Postulate::A3DoublePrime)?;
    existential(s, Postulate::A3DoublePrime, &[QOrdering::Less], |p, q, _| {
        Ok(!overrides_values(p, q)?)
    })
}

/// `p > q > r` and some `β` with `q > β·p + (1−β)·r` ⇒ some `γ` with
/// `q ∼ γ·p + (1−γ)·r`.
pub fn check_gamma_property(s: &PrefStructure) -> Result<Verdict> {
    s.require(&[Regime::Std, Regime::NsUtil], Postulate::Gamma)?;
    let regime = s.regime;
    existential(s, Postulate::Gamma, &[QOrdering::Equivalent], move |p, q, r| {
        Ok(affine_relation_witness(p, r, q, q, QOrdering::Less, regime)?.is_some())
    })
}

/// Pairs of acts agreeing off one state: every generator pair that does,
/// plus `(a, a[s := b(s)])` for all generators `a`, `b` and states `s`.
fn state_pairs(setup: &ActSetup) -> Vec<(Act, Act, String)> {
    let mut out = IndexSet::new();
    for s in setup.model.states.ids() {
        for a in &setup.generators {
            for b in &setup.generators {
                if a.agrees_off(b, s) {
                    out.insert((a.clone(), b.clone(), s.clone()));
                }
                if let Some(l) = b.at(s) {
                    let b2 = a.with(s, l.clone());
                    out.insert((a.clone(), b2.clone(), s.clone()));
                    out.insert((b2, a.clone(), s.clone()));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// If `a` and `b` agree off `s₀` and `a > b`, then `a(s₀) > b(s₀)`.
pub fn check_a4(s: &PrefStructure) -> Result<Verdict> {
    let setup = s.act_setup()?;
    let m = &setup.model;
    let pairs = state_pairs(setup);
    sweep(pairs.len(), |i| {
        let (a, b, st) = &pairs[i];
        let mut row = Row::default();
        if act_prefers(a, b, m)? != PrefOrdering::Better {
            return Ok(row);
        }
        row.checked = 1;
        let (la, lb) = (a.at(st).expect("total act"), b.at(st).expect("total act"));
        if prefers(la, lb, &m.utilities, m.regime)? != PrefOrdering::Better {
            row.failure = Some(Certificate::StateIndependence {
                a: a.clone(),
                b: b.clone(),
                state: st.clone(),
            });
        }
        Ok(row)
    })
}

/// If the constant act at `a(t)` overrides `a`, then `t` is null.
pub fn check_a5_prime(s: &PrefStructure) -> Result<Verdict> {
    s.require(&[Regime::NsUtil, Regime::Qualitative], Postulate::A5Prime)?;
    s.require_unsigned(Postulate::A5Prime)?;
    let setup = s.act_setup()?;
    let m = &setup.model;
    let states = m.states.ids();
    let mut null = Vec::with_capacity(states.len());
    for t in states {
        null.push(is_null(t, m, &setup.generators)?);
    }
    sweep(states.len(), |ti| {
        let t = &states[ti];
        let mut row = Row::default();
        for a in &setup.generators {
            let here = a.at(t).ok_or_else(|| Error::UnknownState(t.clone()))?;
            let x = expected_utility(here, &m.utilities)?;
            if !overrides_values(&x, &act_utility(a, m)?)? {
                continue;
            }
            row.checked += 1;
            if !null[ti] {
                row.failure = Some(Certificate::OverridingNonNullState {
                    act: a.clone(),
                    state: t.clone(),
                });
                return Ok(row);
            }
        }
        Ok(row)
    })
}

pub fn check(s: &PrefStructure, p: Postulate) -> Result<Verdict> {
    match p {
        Postulate::A1 => check_a1(s),
        Postulate::A2 => check_a2(s),
        Postulate::A3 => check_a3(s),
        Postulate::B2 => check_b2(s),
        Postulate::A2Prime => check_a2_prime(s),
        Postulate::A3Prime => check_a3_prime(s),
        Postulate::A3DoublePrime => check_a3_double_prime(s),
        Postulate::Gamma => check_gamma_property(s),
        Postulate::A4 => check_a4(s),
        Postulate::A5Prime => check_a5_prime(s),
    }
}

/// Checks each requested postulate in order.
pub fn audit(s: &PrefStructure, postulates: &[Postulate]) -> Result<AuditReport> {
    let closure = mixture_closure(s, s.depth);
    let distinct = points(s)?.len();
    let mut entries = Vec::with_capacity(postulates.len());
    for p in postulates {
        entries.push((*p, check(s, *p)?));
    }
    Ok(AuditReport {
        regime: s.regime,
        utilities: s.utilities.clone(),
        act_model: s.acts.as_ref().map(|a| a.model.clone()),
        grid: s.grid,
        depth: s.depth,
        closure_size: closure.len(),
        distinct_values: distinct,
        entries,
    })
}

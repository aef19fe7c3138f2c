//! Lifting clique inequalities of a projected graph back to the original
//! graph.
//!
//! Starting from `f_r(x) = x_{W_{r+1}} <= 1` on `G_r`, each projection is
//! undone in reverse order with
//! `f_{t-1}(x) = f_t(x) + λ_t (x_{W_t} - 1)`. The basic procedure takes `λ_t`
//! from a maximization over stable sets of `G_{t-1}` avoiding `W_t`; the
//! strengthened one maximizes over stable sets of `G` itself that meet each of
//! `W_1, ..., W_{t-1}` exactly once and avoid `W_t`, which never gives a larger
//! factor.
//!
//! A factor is only used if the solver proved it optimal; a timeout aborts the
//! whole cut.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::combinatorics::enumerate::enumerate_stable_sets;
use crate::combinatorics::mwss::{max_weight_stable_set, solve_constrained, ConstrainedMwssQuery};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, WeightVector};
use crate::projection::{ProjectionTrace, TraceRecord};

/// Graphs up to this size are checked by enumerating stable sets.
pub const ENUMERATION_ORACLE_LIMIT: usize = 14;

/// `Σ c_v x_v <= rhs` with integer data. Zero coefficients are never stored,
/// so the key set is the support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inequality {
    #[serde(with = "coefficient_pairs")]
    coefficients: BTreeMap<usize, i64>,
    rhs: i64,
}

mod coefficient_pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<usize, i64>, s: S) -> Result<S::Ok, S::Error> {
        map.iter()
            .map(|(&v, &c)| (v, c))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, i64>, D::Error> {
        let pairs = Vec::<(usize, i64)>::deserialize(d)?;
        let mut map = BTreeMap::new();
        for (v, c) in pairs {
            *map.entry(v).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        Ok(map)
    }
}

impl Inequality {
    pub fn new(coefficients: impl IntoIterator<Item = (usize, i64)>, rhs: i64) -> Self {
        let mut map = BTreeMap::new();
        for (v, c) in coefficients {
            *map.entry(v).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        Self {
            coefficients: map,
            rhs,
        }
    }

    /// `x_W <= 1`.
    pub fn clique(w: &VertexSet) -> Self {
        Self::new(w.iter().map(|v| (v, 1)), 1)
    }

    pub fn coefficient(&self, v: usize) -> i64 {
        self.coefficients.get(&v).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coefficients.iter().map(|(&v, &c)| (v, c))
    }

    pub fn rhs(&self) -> i64 {
        self.rhs
    }

    pub fn support(&self) -> VertexSet {
        self.coefficients.keys().copied().collect()
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.coefficients.keys().next_back().copied()
    }

    pub fn weights(&self, n: usize) -> WeightVector {
        let mut w = vec![0; n];
        for (&v, &c) in &self.coefficients {
            w[v] = c;
        }
        WeightVector::new(w)
    }

    pub fn lhs_at(&self, point: &[f64]) -> f64 {
        self.coefficients
            .iter()
            .map(|(&v, &c)| c as f64 * point[v])
            .sum()
    }

    pub fn lhs_of_set(&self, set: &VertexSet) -> i64 {
        set.iter().map(|v| self.coefficient(v)).sum()
    }

    /// `lhs(x̄) - rhs`; positive means the point is cut off.
    pub fn violation(&self, point: &[f64]) -> f64 {
        self.lhs_at(point) - self.rhs as f64
    }

    /// Divides coefficients and rhs by their common gcd when the rhs is
    /// positive. Returns the reduced inequality and the divisor used.
    pub fn normalized(&self) -> (Inequality, i64) {
        if self.rhs <= 0 {
            return (self.clone(), 1);
        }
        let g = self
            .coefficients
            .values()
            .fold(self.rhs, |acc, &c| gcd(acc, c.abs()));
        if g <= 1 {
            return (self.clone(), 1);
        }
        let reduced = Inequality {
            coefficients: self
                .coefficients
                .iter()
                .map(|(&v, &c)| (v, c / g))
                .collect(),
            rhs: self.rhs / g,
        };
        (reduced, g)
    }

    /// Text form `c*x<v> + ... <= rhs` with `label` naming the vertices.
    pub fn to_text_with(&self, label: impl Fn(usize) -> usize) -> String {
        let mut out = String::new();
        for (i, (&v, &c)) in self.coefficients.iter().enumerate() {
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            out.push_str(&format!("{}*x{}", c.abs(), label(v)));
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(&format!(" <= {}", self.rhs));
        out
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_with(|v| v))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// An affine function `Σ c_v x_v + constant`; lifted forms are kept in this
/// shape so the `f_t` of the lifting sequence can be compared term by term.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForm {
    #[serde(with = "coefficient_pairs")]
    pub coefficients: BTreeMap<usize, i64>,
    pub constant: i64,
}

impl LinearForm {
    pub fn of_set(w: &VertexSet) -> Self {
        Self {
            coefficients: w.iter().map(|v| (v, 1)).collect(),
            constant: 0,
        }
    }

    pub fn new(coefficients: impl IntoIterator<Item = (usize, i64)>, constant: i64) -> Self {
        let ineq = Inequality::new(coefficients, 0);
        Self {
            coefficients: ineq.coefficients,
            constant,
        }
    }

    /// `self + λ (x_W - 1)`.
    pub fn add_clique_term(&self, w: &VertexSet, lambda: i64) -> Self {
        let mut out = self.clone();
        for v in w.iter() {
            *out.coefficients.entry(v).or_insert(0) += lambda;
        }
        out.coefficients.retain(|_, c| *c != 0);
        out.constant -= lambda;
        out
    }

    /// `self(x) <= d` moved to `Σ c_v x_v <= d - constant`.
    pub fn to_inequality(&self, d: i64) -> Inequality {
        Inequality {
            coefficients: self.coefficients.clone(),
            rhs: d - self.constant,
        }
    }

    pub fn weights(&self, n: usize) -> WeightVector {
        self.to_inequality(0).weights(n)
    }
}

/// One lifting step against a clique `W`.
///
/// If `c x <= d` is valid for `{x ∈ STAB(G) : x_W = 1}` and
/// `lambda <= d - α(G[H \ W], c)`, then
/// `(c x - d) - lambda (x_W - 1) <= 0` is valid for `STAB(G)`. The result is
/// returned in normal form `Σ (c_v - lambda [v ∈ W]) x_v <= d - lambda`.
///
/// The lifting procedures below use the opposite sign convention
/// (`f + λ (x_W - 1)`), so they call this with `-λ`.
pub fn lift_once(ineq: &Inequality, w: &VertexSet, lambda: i64) -> Inequality {
    let mut coefficients = ineq.coefficients.clone();
    for v in w.iter() {
        *coefficients.entry(v).or_insert(0) -= lambda;
    }
    coefficients.retain(|_, c| *c != 0);
    Inequality {
        coefficients,
        rhs: ineq.rhs - lambda,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftProcedure {
    Basic,
    Strengthened,
}

impl fmt::Display for LiftProcedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftProcedure::Basic => "basic",
            LiftProcedure::Strengthened => "strengthened",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCut {
    /// `f_0(x) <= 1` in normal form, not gcd-reduced.
    pub inequality: Inequality,
    /// The projections that were undone, `W_1, ..., W_t`.
    pub trace: ProjectionTrace,
    /// Clique of `G_t` the lifting started from.
    pub seed: VertexSet,
    /// `λ_1, ..., λ_t`, indexed like the trace steps.
    pub factors: Vec<i64>,
    /// `f_0, ..., f_t`.
    pub forms: Vec<LinearForm>,
    pub procedure: LiftProcedure,
}

impl LiftedCut {
    /// Right-hand side of every `f_t <= d`; lifting always starts from a
    /// clique inequality.
    pub const D: i64 = 1;

    pub fn lambda_sum(&self) -> i64 {
        self.factors.iter().sum()
    }

    /// Recomputes `f_0` from the seed and the factors.
    pub fn replay(&self) -> Inequality {
        let mut f = LinearForm::of_set(&self.seed);
        for (t, &lambda) in self.factors.iter().enumerate().rev() {
            f = f.add_clique_term(self.trace.clique(t + 1), lambda);
        }
        f.to_inequality(Self::D)
    }

    pub fn to_record(&self) -> CutRecord {
        CutRecord {
            inequality: self.inequality.clone(),
            procedure: self.procedure,
            seed: self.seed.clone(),
            lambdas: self.factors.clone(),
            trace: self.trace.to_record(),
        }
    }
}

/// JSON shape of a lifted cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRecord {
    pub inequality: Inequality,
    pub procedure: LiftProcedure,
    pub seed: VertexSet,
    pub lambdas: Vec<i64>,
    pub trace: TraceRecord,
}

fn prepare(trace: &ProjectionTrace, seed: &VertexSet, lift_from: usize) -> Result<ProjectionTrace> {
    let prefix = trace.truncated(lift_from)?;
    prefix.current().check_vertex_set(seed)?;
    if seed.is_empty() || !prefix.current().is_clique(seed) {
        return Err(Error::NotAClique(seed.as_slice().to_vec()));
    }
    Ok(prefix)
}

/// Lifts `x_seed <= 1` from `G_{lift_from}` to `G` with the basic factors
/// `λ_t = max { f_t(x) : x ∈ STAB(G_{t-1}), x_{W_t} = 0 } - 1`.
pub fn basic_lift(
    trace: &ProjectionTrace,
    seed: &VertexSet,
    lift_from: usize,
    budget: Option<Duration>,
) -> Result<LiftedCut> {
    let prefix = prepare(trace, seed, lift_from)?;
    let graphs = prefix.graphs();
    let n = prefix.base().vertex_count();
    let mut f = LinearForm::of_set(seed);
    let mut forms = vec![f.clone()];
    let mut factors = vec![0; lift_from];
    for t in (1..=lift_from).rev() {
        let w = prefix.clique(t);
        let q = ConstrainedMwssQuery::new(&graphs[t - 1], f.weights(n))
            .avoid(w.clone())
            .budget(budget);
        let best = solve_constrained(&q)?.exact_value()?;
        let lambda = best + f.constant - LiftedCut::D;
        factors[t - 1] = lambda;
        f = f.add_clique_term(w, lambda);
        forms.push(f.clone());
    }
    forms.reverse();
    Ok(LiftedCut {
        inequality: f.to_inequality(LiftedCut::D),
        trace: prefix,
        seed: seed.clone(),
        factors,
        forms,
        procedure: LiftProcedure::Basic,
    })
}

/// Lifts `x_seed <= 1` from `G_{lift_from}` to `G` with the strengthened
/// factors `λ_ℓ = max { f_ℓ(x) - 1 : x stable in G, x_{W_j} = 1 (j < ℓ),
/// x_{W_ℓ} = 0 }`, taking `λ_ℓ = 0` when no such stable set exists.
pub fn strengthened_lift(
    trace: &ProjectionTrace,
    seed: &VertexSet,
    lift_from: usize,
    budget: Option<Duration>,
) -> Result<LiftedCut> {
    let prefix = prepare(trace, seed, lift_from)?;
    let g = prefix.base();
    let n = g.vertex_count();
    let mut f = LinearForm::of_set(seed);
    let mut forms = vec![f.clone()];
    let mut factors = vec![0; lift_from];
    for l in (1..=lift_from).rev() {
        let w = prefix.clique(l);
        let mut q = ConstrainedMwssQuery::new(g, f.weights(n))
            .avoid(w.clone())
            .budget(budget);
        for j in 1..l {
            q = q.cover(prefix.clique(j).clone());
        }
        let r = solve_constrained(&q)?;
        let best = r.exact_value()?;
        let lambda = if r.infeasible {
            0
        } else {
            best + f.constant - LiftedCut::D
        };
        factors[l - 1] = lambda;
        f = f.add_clique_term(w, lambda);
        forms.push(f.clone());
    }
    forms.reverse();
    Ok(LiftedCut {
        inequality: f.to_inequality(LiftedCut::D),
        trace: prefix,
        seed: seed.clone(),
        factors,
        forms,
        procedure: LiftProcedure::Strengthened,
    })
}

pub fn lift(
    procedure: LiftProcedure,
    trace: &ProjectionTrace,
    seed: &VertexSet,
    lift_from: usize,
    budget: Option<Duration>,
) -> Result<LiftedCut> {
    match procedure {
        LiftProcedure::Basic => basic_lift(trace, seed, lift_from, budget),
        LiftProcedure::Strengthened => strengthened_lift(trace, seed, lift_from, budget),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub valid: bool,
    /// `max { c x : x ∈ STAB(G) }`.
    pub max_lhs: i64,
    /// A stable set attaining `max_lhs`; it violates the inequality when not valid.
    pub witness: VertexSet,
}

/// Decides `max { c x : x ∈ STAB(G) } <= d` exactly: by enumeration on small
/// graphs, by branch and bound otherwise.
pub fn check_validity(g: &Graph, ineq: &Inequality) -> Result<ValidityReport> {
    if let Some(v) = ineq.max_vertex() {
        if v >= g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.vertex_count(),
            });
        }
    }
    if ineq.coefficients.is_empty() {
        return Ok(ValidityReport {
            valid: 0 <= ineq.rhs,
            max_lhs: 0,
            witness: VertexSet::new(),
        });
    }
    // Vertices outside the support do not change the maximum.
    let (h, map) = g.induced_subgraph(&ineq.support())?;
    let weights = WeightVector::new(
        (0..h.vertex_count())
            .map(|v| ineq.coefficient(map.to_old(v)))
            .collect(),
    );
    let (max_lhs, local) = if h.vertex_count() <= ENUMERATION_ORACLE_LIMIT {
        enumerate_stable_sets(&h, ENUMERATION_ORACLE_LIMIT)?
            .map(|s| (weights.total(&s), s))
            .max_by_key(|(v, _)| *v)
            .expect("the empty set is always stable")
    } else {
        let r = max_weight_stable_set(&h, &weights, None)?;
        (r.best_value, r.best_set)
    };
    let witness = local.iter().map(|v| map.to_old(v)).collect();
    Ok(ValidityReport {
        valid: max_lhs <= ineq.rhs,
        max_lhs,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrengthReport {
    /// `H^S ⊆ H^B`.
    pub support_contained: bool,
    /// `λ^S_t <= λ^B_t` for every `t`.
    pub factors_dominated: bool,
    /// `1 + Σ λ^B`.
    pub basic_tightness: i64,
    /// `1 + Σ λ^S`.
    pub strengthened_tightness: i64,
    /// `α(G[H^B], c^B)`.
    pub basic_alpha: i64,
    /// `α(G[H^S], c^S)`.
    pub strengthened_alpha: i64,
}

impl StrengthReport {
    /// `1 + Σλ^S = α(G[H^S], c^S)`.
    pub fn strengthened_is_tight(&self) -> bool {
        self.strengthened_tightness == self.strengthened_alpha
    }

    /// `α(G[H^B], c^B) <= 1 + Σλ^B`, i.e. the basic cut is valid.
    pub fn basic_is_valid(&self) -> bool {
        self.basic_alpha <= self.basic_tightness
    }

    /// `1 + Σλ^S = α(G[H^S], c^S) <= α(G[H^B], c^B) <= 1 + Σλ^B`. The middle
    /// link, support containment and factor domination can each fail on
    /// their own.
    pub fn chain_holds(&self) -> bool {
        self.strengthened_is_tight()
            && self.strengthened_alpha <= self.basic_alpha
            && self.basic_is_valid()
    }
}

pub fn strength_report(basic: &LiftedCut, strong: &LiftedCut) -> Result<StrengthReport> {
    if basic.trace.cliques() != strong.trace.cliques() || basic.seed != strong.seed {
        return Err(Error::MismatchedCuts);
    }
    let g = basic.trace.base();
    let alpha = |ineq: &Inequality| -> Result<i64> {
        Ok(max_weight_stable_set(g, &ineq.weights(g.vertex_count()), None)?.best_value)
    };
    Ok(StrengthReport {
        support_contained: strong
            .inequality
            .support()
            .is_subset(&basic.inequality.support()),
        factors_dominated: strong
            .factors
            .iter()
            .zip(&basic.factors)
            .all(|(s, b)| s <= b),
        basic_tightness: LiftedCut::D + basic.lambda_sum(),
        strengthened_tightness: LiftedCut::D + strong.lambda_sum(),
        basic_alpha: alpha(&basic.inequality)?,
        strengthened_alpha: alpha(&strong.inequality)?,
    })
}

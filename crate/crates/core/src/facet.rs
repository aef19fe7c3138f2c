//! Sufficient conditions for lifted cuts to be facet defining, and exact
//! face-dimension oracles to check them against on small graphs.
//!
//! A witness fixes `k` and the classes `V_r^1, ..., V_r^k` of the vertices
//! covered by `W_1, ..., W_r`; the classes at step `t` are
//! `V_t^i = V_r^i ∩ (W_1 ∪ ... ∪ W_t)` and `V_t^0` is everything else. The last
//! class plays the role of `V^k`.

use serde::{Deserialize, Serialize};

use crate::combinatorics::enumerate::enumerate_stable_sets;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::lifting::{Inequality, LiftedCut, LinearForm};
use crate::projection::ProjectionTrace;

/// Enumeration-based checks refuse larger graphs.
pub const FACET_ORACLE_LIMIT: usize = 16;
/// Witness search is only attempted up to this size.
pub const WITNESS_SEARCH_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetWitness {
    pub k: usize,
    /// `V_r^1, ..., V_r^k`.
    pub classes: Vec<VertexSet>,
    /// `W_1, ..., W_r`.
    pub hyperedges: Vec<VertexSet>,
    /// `R` with one vertex in each of the first `k - 1` classes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representative: Option<VertexSet>,
}

impl FacetWitness {
    pub fn new(classes: Vec<VertexSet>, hyperedges: Vec<VertexSet>) -> Self {
        Self {
            k: classes.len(),
            classes,
            hyperedges,
            representative: None,
        }
    }

    pub fn r(&self) -> usize {
        self.hyperedges.len()
    }

    /// `V_t = W_1 ∪ ... ∪ W_t`.
    pub fn covered(&self, t: usize) -> VertexSet {
        self.hyperedges[..t]
            .iter()
            .fold(VertexSet::new(), |acc, w| acc.union(w))
    }

    /// `V_t^i` for `i` in `1..=k`.
    pub fn class_at(&self, i: usize, t: usize) -> VertexSet {
        let covered = self.covered(t);
        self.classes[i - 1]
            .iter()
            .filter(|&v| covered.contains(v))
            .collect()
    }

    /// `V_t^0 = V \ V_t`.
    pub fn outside(&self, n: usize, t: usize) -> VertexSet {
        let covered = self.covered(t);
        (0..n).filter(|&v| !covered.contains(v)).collect()
    }

    fn class_of(&self, v: usize) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.contains(v))
            .map(|i| i + 1)
    }

    /// Structural consistency with `trace`: same hyperedges, `k` nonempty
    /// disjoint classes covering exactly `V_r`.
    pub fn validate(&self, trace: &ProjectionTrace) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidWitness(m));
        if self.k == 0 || self.k != self.classes.len() {
            return bad(format!(
                "k = {} but {} classes given",
                self.k,
                self.classes.len()
            ));
        }
        if self.hyperedges != trace.cliques() {
            return bad("hyperedges differ from the trace cliques".into());
        }
        let n = trace.base().vertex_count();
        let mut seen = VertexSet::new();
        for c in &self.classes {
            trace.base().check_vertex_set(c)?;
            if !seen.is_disjoint(c) {
                return bad(format!("class {c} overlaps another class"));
            }
            seen = seen.union(c);
        }
        if seen != self.covered(self.r()) {
            return bad("classes must cover exactly the vertices of the hyperedges".into());
        }
        if let Some(rep) = &self.representative {
            trace.base().check_vertex_set(rep)?;
            for i in 1..self.k {
                if rep.intersection_len(&self.classes[i - 1]) != 1 {
                    return bad(format!("R must meet class {i} exactly once"));
                }
            }
            if !rep.is_disjoint(&self.classes[self.k - 1]) || !rep.iter().all(|v| v < n) {
                return bad("R must avoid the last class".into());
            }
        }
        Ok(())
    }
}

/// `|W_l ∩ V_t^i| = 1` for every `l <= t` and every class.
pub fn check_interwv(witness: &FacetWitness, t: usize) -> bool {
    (1..=witness.k).all(|i| {
        let class = witness.class_at(i, t);
        witness.hyperedges[..t]
            .iter()
            .all(|w| w.intersection_len(&class) == 1)
    })
}

/// (I): `|W_t| = k` and the classes `V_t^i` split `G_{t-1}[V_t]` into `k`
/// stable sets.
pub fn check_condition_i(trace: &ProjectionTrace, witness: &FacetWitness, t: usize) -> bool {
    if t == 0 || t > trace.len() || trace.clique(t).len() != witness.k {
        return false;
    }
    let g = trace.graph_at(t - 1);
    let mut union = VertexSet::new();
    for i in 1..=witness.k {
        let class = witness.class_at(i, t);
        if !g.is_stable(&class) {
            return false;
        }
        union = union.union(&class);
    }
    union == witness.covered(t)
}

/// (II): `(V_t, {W_1, ..., W_t})` is a strong hypertree.
pub fn check_strong_hypertree(witness: &FacetWitness, t: usize) -> bool {
    let edges: Vec<&VertexSet> = witness.hyperedges[..t].iter().collect();
    if edges.is_empty() {
        return false;
    }
    let k = witness.k;
    if edges.iter().any(|w| w.len() != k) {
        return false;
    }
    let mut memo = std::collections::HashMap::new();
    reducible(&edges, k, (1u64 << edges.len()) - 1, &mut memo)
}

/// Whether the hyperedges selected by `mask` reduce to a single one by
/// removing a hyperedge with a private vertex that shares `k - 1` vertices
/// with another remaining hyperedge.
fn reducible(
    edges: &[&VertexSet],
    k: usize,
    mask: u64,
    memo: &mut std::collections::HashMap<u64, bool>,
) -> bool {
    if mask.count_ones() == 1 {
        return true;
    }
    if let Some(&r) = memo.get(&mask) {
        return r;
    }
    let live: Vec<usize> = (0..edges.len()).filter(|&i| mask >> i & 1 == 1).collect();
    let result = live.iter().any(|&i| {
        let private = edges[i]
            .iter()
            .any(|v| live.iter().filter(|&&j| edges[j].contains(v)).count() == 1);
        let attached = live
            .iter()
            .any(|&j| j != i && edges[i].intersection_len(edges[j]) + 1 == k);
        private && attached && reducible(edges, k, mask & !(1 << i), memo)
    });
    memo.insert(mask, result);
    result
}

/// (III): every `w ∈ V_t^0` misses some class `V_t^i` entirely in `G_{t-1}`.
pub fn check_condition_iii(trace: &ProjectionTrace, witness: &FacetWitness, t: usize) -> bool {
    if t == 0 || t > trace.len() {
        return false;
    }
    let g = trace.graph_at(t - 1);
    let classes: Vec<VertexSet> = (1..=witness.k).map(|i| witness.class_at(i, t)).collect();
    witness
        .outside(g.vertex_count(), t)
        .iter()
        .all(|w| classes.iter().any(|c| c.iter().all(|v| !g.has_edge(w, v))))
}

/// The two branches of (IV) for one `(t, i, w)`: with `v` the vertex of
/// `W_t ∩ V_t^i`, either `vw ∈ E`, or some `W_{t'}` adjacent to `W_t` in
/// `T_r`, with `W_t` a clique of `G_{t'-1}` and `v ∉ W_{t'}`, has its class-`i`
/// vertex adjacent to `w` in `G_{t'-1}`.
fn condition_iv_at(graphs: &[Graph], witness: &FacetWitness, t: usize, i: usize, w: usize) -> bool {
    let wt = &witness.hyperedges[t - 1];
    let class_r = &witness.classes[i - 1];
    let Some(v) = wt.iter().find(|&u| class_r.contains(u)) else {
        return false;
    };
    if graphs[0].has_edge(v, w) {
        return true;
    }
    (1..=witness.r()).any(|tp| {
        let wtp = &witness.hyperedges[tp - 1];
        tp != t
            && wt.intersection_len(wtp) + 1 == witness.k
            && graphs[tp - 1].is_clique(wt)
            && !wtp.contains(v)
            && wtp
                .iter()
                .any(|u| class_r.contains(u) && graphs[tp - 1].has_edge(u, w))
    })
}

fn condition_iv_pairs(graphs: &[Graph], witness: &FacetWitness) -> Vec<(usize, usize)> {
    let r = witness.r();
    let gr = &graphs[r];
    let mut pairs = Vec::new();
    for i in 1..witness.k {
        for w in witness.outside(gr.vertex_count(), r).iter() {
            if witness.classes[i - 1].iter().any(|v| gr.has_edge(v, w)) {
                pairs.push((i, w));
            }
        }
    }
    pairs
}

/// (IV), read per class vertex: for every qualifying `(i, w)` and every
/// `v ∈ V_r^i`, the two-branch test holds for at least one `W_t` containing
/// `v`. This is what the edge `vw ∈ E_r` conclusion needs.
pub fn check_condition_iv(trace: &ProjectionTrace, witness: &FacetWitness) -> bool {
    let graphs = trace.graphs();
    condition_iv_pairs(&graphs, witness)
        .into_iter()
        .all(|(i, w)| {
            witness.classes[i - 1].iter().all(|v| {
                (1..=witness.r()).any(|t| {
                    witness.hyperedges[t - 1].contains(v)
                        && condition_iv_at(&graphs, witness, t, i, w)
                })
            })
        })
}

/// (IV) demanded separately for every `t`. Stricter than
/// [`check_condition_iv`]; kept for comparison.
pub fn check_condition_iv_every_t(trace: &ProjectionTrace, witness: &FacetWitness) -> bool {
    let graphs = trace.graphs();
    condition_iv_pairs(&graphs, witness)
        .into_iter()
        .all(|(i, w)| (1..=witness.r()).all(|t| condition_iv_at(&graphs, witness, t, i, w)))
}

/// (V): no vertex of the last class has a `G_r` neighbour in `V_r^0`.
pub fn check_condition_v(trace: &ProjectionTrace, witness: &FacetWitness) -> bool {
    let gr = trace.current();
    let outside = witness.outside(gr.vertex_count(), witness.r());
    witness.classes[witness.k - 1]
        .iter()
        .all(|v| outside.iter().all(|w| !gr.has_edge(v, w)))
}

/// `W_{r+1}` is a maximal clique of `G_r` avoiding the last class.
pub fn check_seed(trace: &ProjectionTrace, witness: &FacetWitness, seed: &VertexSet) -> bool {
    trace.current().is_maximal_clique(seed) && seed.is_disjoint(&witness.classes[witness.k - 1])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub interwv: bool,
    /// Per `t = 1..=r`.
    pub condition_i: Vec<bool>,
    pub condition_ii: Vec<bool>,
    pub condition_iii: Vec<bool>,
    pub condition_iv: bool,
    pub condition_iv_every_t: bool,
    pub condition_v: bool,
    pub seed: Option<bool>,
}

impl ConditionReport {
    /// (I)-(III) for every `t`: each `x_{W_t} <= 1` is a facet of `F_{t-1}`.
    pub fn first_claim(&self) -> bool {
        self.condition_i
            .iter()
            .chain(&self.condition_ii)
            .chain(&self.condition_iii)
            .all(|&b| b)
    }

    /// (I), (II), (IV), (V) and the seed: `f_t <= 1` is a facet of `F_t`.
    pub fn second_claim(&self) -> bool {
        self.condition_i
            .iter()
            .chain(&self.condition_ii)
            .all(|&b| b)
            && self.condition_iv
            && self.condition_v
            && self.seed == Some(true)
    }
}

pub fn check_conditions(
    trace: &ProjectionTrace,
    witness: &FacetWitness,
    seed: Option<&VertexSet>,
) -> Result<ConditionReport> {
    witness.validate(trace)?;
    let r = trace.len();
    Ok(ConditionReport {
        interwv: check_interwv(witness, r),
        condition_i: (1..=r)
            .map(|t| check_condition_i(trace, witness, t))
            .collect(),
        condition_ii: (1..=r)
            .map(|t| check_strong_hypertree(witness, t))
            .collect(),
        condition_iii: (1..=r)
            .map(|t| check_condition_iii(trace, witness, t))
            .collect(),
        condition_iv: check_condition_iv(trace, witness),
        condition_iv_every_t: check_condition_iv_every_t(trace, witness),
        condition_v: check_condition_v(trace, witness),
        seed: seed.map(|s| check_seed(trace, witness, s)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionCertificate {
    /// `-1` for an empty face.
    pub affine_dim: i64,
    /// Affinely independent stable sets in the face, `affine_dim + 1` of them.
    pub witness_points: Vec<VertexSet>,
}

/// Stable sets of `g` on which every inequality in `equalities` is tight.
pub fn face_points(g: &Graph, equalities: &[Inequality]) -> Result<Vec<VertexSet>> {
    if g.vertex_count() > FACET_ORACLE_LIMIT {
        return Err(Error::TooLarge {
            n: g.vertex_count(),
            limit: FACET_ORACLE_LIMIT,
        });
    }
    Ok(enumerate_stable_sets(g, FACET_ORACLE_LIMIT)?
        .filter(|s| equalities.iter().all(|e| e.lhs_of_set(s) == e.rhs()))
        .collect())
}

/// Exact dimension of `{x ∈ STAB(G) : a x = b for every equality}`.
pub fn face_dimension(g: &Graph, equalities: &[Inequality]) -> Result<DimensionCertificate> {
    let points = face_points(g, equalities)?;
    Ok(affine_hull(g.vertex_count(), &points))
}

fn affine_hull(n: usize, points: &[VertexSet]) -> DimensionCertificate {
    let Some(first) = points.first() else {
        return DimensionCertificate {
            affine_dim: -1,
            witness_points: Vec::new(),
        };
    };
    let base = indicator(n, first);
    let mut echelon = RowEchelon::default();
    let mut witness_points = vec![first.clone()];
    for p in &points[1..] {
        let diff: Vec<i128> = indicator(n, p)
            .iter()
            .zip(&base)
            .map(|(a, b)| a - b)
            .collect();
        if echelon.insert(diff) {
            witness_points.push(p.clone());
            if echelon.rows.len() == n {
                break;
            }
        }
    }
    DimensionCertificate {
        affine_dim: echelon.rows.len() as i64,
        witness_points,
    }
}

fn indicator(n: usize, s: &VertexSet) -> Vec<i128> {
    let mut x = vec![0; n];
    for v in s.iter() {
        x[v] = 1;
    }
    x
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Integer row echelon form with primitive rows; exact for the small
/// entries that incidence-vector differences produce.
#[derive(Default)]
struct RowEchelon {
    rows: Vec<(usize, Vec<i128>)>,
}

impl RowEchelon {
    /// Adds `v` if it is independent of the stored rows.
    fn insert(&mut self, mut v: Vec<i128>) -> bool {
        for (p, row) in &self.rows {
            if v[*p] != 0 {
                let (a, b) = (row[*p], v[*p]);
                for (x, y) in v.iter_mut().zip(row) {
                    *x = *x * a - *y * b;
                }
                let g = v.iter().fold(0, |acc, &x| gcd(acc, x));
                if g > 1 {
                    v.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

/// Equalities `x_{W_j} = 1` for `j <= t` that cut `F_t` out of `STAB(G)`.
pub fn face_equalities(trace: &ProjectionTrace, t: usize) -> Vec<Inequality> {
    (1..=t)
        .map(|j| Inequality::clique(trace.clique(j)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetReport {
    pub t: usize,
    pub face_dim: i64,
    /// Dimension of the points of `F_t` where `f_t = 1`.
    pub tight_dim: i64,
    /// `f_t <= 1` holds on all of `F_t`.
    pub valid: bool,
    pub facet: bool,
    /// Prediction from the sufficient conditions, when a witness was given.
    pub predicted: Option<bool>,
}

impl FacetReport {
    /// False only when the conditions predicted a facet and the oracle
    /// disagrees.
    pub fn consistent(&self) -> bool {
        self.predicted != Some(true) || self.facet
    }
}

/// Checks `f_t <= 1` against `F_t` with the dimension oracle.
pub fn assert_facet_of_form(
    trace: &ProjectionTrace,
    form: &LinearForm,
    t: usize,
) -> Result<FacetReport> {
    let g = trace.base();
    let face = face_points(g, &face_equalities(trace, t))?;
    let ineq = form.to_inequality(LiftedCut::D);
    let valid = face.iter().all(|s| ineq.lhs_of_set(s) <= ineq.rhs());
    let tight: Vec<VertexSet> = face
        .iter()
        .filter(|s| ineq.lhs_of_set(s) == ineq.rhs())
        .cloned()
        .collect();
    let face_dim = affine_hull(g.vertex_count(), &face).affine_dim;
    let tight_dim = affine_hull(g.vertex_count(), &tight).affine_dim;
    Ok(FacetReport {
        t,
        face_dim,
        tight_dim,
        valid,
        facet: valid && tight_dim == face_dim - 1,
        predicted: None,
    })
}

/// [`assert_facet_of_form`] for the `f_t` of a lifted cut, compared with the
/// conditions when a witness is supplied.
pub fn assert_facet_of_ft(
    cut: &LiftedCut,
    t: usize,
    witness: Option<&FacetWitness>,
) -> Result<FacetReport> {
    if t >= cut.forms.len() {
        return Err(Error::StepOutOfRange {
            index: t,
            len: cut.forms.len() - 1,
        });
    }
    let mut report = assert_facet_of_form(&cut.trace, &cut.forms[t], t)?;
    if let Some(w) = witness {
        let conditions = check_conditions(&cut.trace, w, Some(&cut.seed))?;
        report.predicted = Some(t >= 1 && conditions.second_claim());
    }
    Ok(report)
}

/// Every point of `F_t` is constant on each class `V_t^i`.
pub fn verify_class_equality(
    trace: &ProjectionTrace,
    witness: &FacetWitness,
    t: usize,
) -> Result<bool> {
    let face = face_points(trace.base(), &face_equalities(trace, t))?;
    let classes: Vec<VertexSet> = (1..=witness.k).map(|i| witness.class_at(i, t)).collect();
    Ok(face.iter().all(|s| {
        classes
            .iter()
            .all(|c| c.iter().all(|v| s.contains(v)) || c.is_disjoint(s))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismReport {
    pub holds: bool,
    pub face_points: usize,
    pub reduced_points: usize,
    pub counterexample: Option<String>,
}

/// Checks `F_r ≅ STAB(G_r[V_r^0 ∪ R])` on integral points through the two
/// explicit maps: restriction to `V_r^0 ∪ R`, and the extension that copies
/// `y_{v_i}` to all of `V_r^i` and fills the last class with
/// `1 - Σ y_{v_i}`.
pub fn verify_isomorphism(
    trace: &ProjectionTrace,
    witness: &FacetWitness,
) -> Result<IsomorphismReport> {
    witness.validate(trace)?;
    let rep = witness
        .representative
        .clone()
        .ok_or_else(|| Error::InvalidWitness("a representative set R is required".into()))?;
    let g = trace.base();
    let n = g.vertex_count();
    let r = witness.r();
    let outside = witness.outside(n, r);
    let keep = outside.union(&rep);
    let (sub, map) = trace.current().induced_subgraph(&keep)?;
    let face = face_points(g, &face_equalities(trace, r))?;
    let reduced: Vec<VertexSet> = enumerate_stable_sets(&sub, FACET_ORACLE_LIMIT)?
        .map(|s| s.iter().map(|v| map.to_old(v)).collect())
        .collect();
    let k = witness.k;
    let fail = |msg: String| IsomorphismReport {
        holds: false,
        face_points: face.len(),
        reduced_points: reduced.len(),
        counterexample: Some(msg),
    };
    let eqs = face_equalities(trace, r);
    for y in &reduced {
        let mut x: VertexSet = y.iter().filter(|&v| outside.contains(v)).collect();
        let mut chosen = 0;
        for i in 1..k {
            let vi = rep
                .iter()
                .find(|&v| witness.classes[i - 1].contains(v))
                .expect("validated");
            if y.contains(vi) {
                chosen += 1;
                x = x.union(&witness.classes[i - 1]);
            }
        }
        if chosen > 1 {
            return Ok(fail(format!(
                "{y} picks {chosen} representatives, so the last class gets a negative value"
            )));
        }
        if chosen == 0 {
            x = x.union(&witness.classes[k - 1]);
        }
        if !g.is_stable(&x) || eqs.iter().any(|e| e.lhs_of_set(&x) != e.rhs()) {
            return Ok(fail(format!(
                "{y} extends to {x}, which is not in the face"
            )));
        }
        let back: VertexSet = x.iter().filter(|&v| keep.contains(v)).collect();
        if &back != y {
            return Ok(fail(format!("{y} does not survive the round trip")));
        }
    }
    for x in &face {
        let y: VertexSet = x.iter().filter(|&v| keep.contains(v)).collect();
        if !reduced.contains(&y) {
            return Ok(fail(format!(
                "{x} restricts to {y}, which is not stable in the reduced graph"
            )));
        }
    }
    if face.len() != reduced.len() {
        return Ok(fail(format!(
            "{} face points against {} reduced points",
            face.len(),
            reduced.len()
        )));
    }
    Ok(IsomorphismReport {
        holds: true,
        face_points: face.len(),
        reduced_points: reduced.len(),
        counterexample: None,
    })
}

/// Searches class assignments for `k = |W_1| <= 3` and `n <= 12` that
/// satisfy (I)-(V) with `seed` as `W_{r+1}`.
pub fn find_witness(trace: &ProjectionTrace, seed: &VertexSet) -> Option<FacetWitness> {
    let n = trace.base().vertex_count();
    if trace.is_empty() || n > WITNESS_SEARCH_LIMIT {
        return None;
    }
    let cliques = trace.cliques();
    let k = cliques[0].len();
    if !(1..=3).contains(&k) || cliques.iter().any(|w| w.len() != k) {
        return None;
    }
    let mut out = None;
    let mut assign = vec![0usize; n];
    search(&cliques, k, 0, &mut assign, &mut |assign| {
        for last in 1..=k {
            let classes: Vec<VertexSet> = (1..=k)
                .map(|i| {
                    // Rotate so that class `last` becomes V^k.
                    let label = (i + last - 1) % k + 1;
                    (0..n).filter(|&v| assign[v] == label).collect()
                })
                .collect();
            let witness = FacetWitness::new(classes, cliques.clone());
            if let Ok(report) = check_conditions(trace, &witness, Some(seed)) {
                if report.first_claim() && report.second_claim() {
                    out = Some(witness);
                    return true;
                }
            }
        }
        false
    });
    out
}

/// Assigns classes `1..=k` so that each hyperedge gets every class once;
/// `visit` returns true to stop.
fn search(
    cliques: &[VertexSet],
    k: usize,
    idx: usize,
    assign: &mut [usize],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if idx == cliques.len() {
        return visit(assign);
    }
    let w = &cliques[idx];
    let used: Vec<usize> = w.iter().map(|v| assign[v]).filter(|&c| c != 0).collect();
    let mut dup = used.clone();
    dup.sort_unstable();
    dup.dedup();
    if dup.len() != used.len() {
        return false;
    }
    let free: Vec<usize> = w.iter().filter(|&v| assign[v] == 0).collect();
    let labels: Vec<usize> = (1..=k).filter(|c| !used.contains(c)).collect();
    // The first hyperedge fixes the labelling up to the rotation tried by the caller.
    let orders = if idx == 0 {
        vec![labels.clone()]
    } else {
        permutations(&labels)
    };
    for order in orders {
        for (&v, &c) in free.iter().zip(&order) {
            assign[v] = c;
        }
        if search(cliques, k, idx + 1, assign, visit) {
            return true;
        }
        for &v in &free {
            assign[v] = 0;
        }
    }
    false
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

impl FacetWitness {
    /// The class index of `v`, `1..=k`, if `v` is covered.
    pub fn class_index(&self, v: usize) -> Option<usize> {
        self.class_of(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{figure1_graph, figure2_cliques, figure2_seed, labels};
    use crate::lifting::strengthened_lift;

    fn figure_trace() -> ProjectionTrace {
        ProjectionTrace::from_cliques(&figure1_graph(), &figure2_cliques()).unwrap()
    }

    fn figure_witness() -> FacetWitness {
        let mut w = FacetWitness::new(
            vec![labels(&[2, 4]), labels(&[3, 5]), labels(&[1])],
            figure2_cliques(),
        );
        w.representative = Some(labels(&[2, 3]));
        w
    }

    #[test]
    fn figure_conditions() {
        let t = figure_trace();
        let w = figure_witness();
        let report = check_conditions(&t, &w, Some(&figure2_seed())).unwrap();
        assert!(report.interwv);
        assert!(report.first_claim() && report.second_claim(), "{report:?}");
        // Demanding the two-branch test for each t separately fails at t = 3,
        // v = 4, w = 6.
        assert!(!report.condition_iv_every_t);
    }

    #[test]
    fn condition_failures() {
        let t = figure_trace();
        let mut w = figure_witness();
        w.classes = vec![labels(&[2, 4, 3]), labels(&[5]), labels(&[1])];
        w.k = 3;
        assert!(!check_condition_i(&t, &w, 1));
        let short = ProjectionTrace::from_cliques(&figure1_graph(), &[labels(&[1, 2])]).unwrap();
        let two = FacetWitness::new(
            vec![labels(&[1]), labels(&[2]), VertexSet::new()],
            vec![labels(&[1, 2])],
        );
        assert!(!check_condition_i(&short, &two, 1));
    }

    #[test]
    fn condition_iii_and_v() {
        let t = figure_trace();
        let w = figure_witness();
        assert!(check_condition_v(&t, &w));
        let swapped = FacetWitness::new(
            vec![labels(&[2, 4]), labels(&[1]), labels(&[3, 5])],
            figure2_cliques(),
        );
        assert!(check_condition_i(&t, &swapped, 3));
        assert!(!check_condition_v(&t, &swapped));
        let tri = ProjectionTrace::from_cliques(&Graph::complete(3), &[VertexSet::from([0, 1, 2])])
            .unwrap();
        let full = FacetWitness::new(
            (0..3).map(VertexSet::singleton).collect(),
            vec![VertexSet::from([0, 1, 2])],
        );
        assert!(check_condition_iii(&tri, &full, 1) && check_condition_v(&tri, &full));
        let hub = Graph::from_edges(4, [(0, 1), (0, 3), (1, 3)]).unwrap();
        let hub = ProjectionTrace::from_cliques(&hub, &[VertexSet::from([0, 1])]).unwrap();
        let two = FacetWitness::new(
            vec![VertexSet::from([0]), VertexSet::from([1])],
            vec![VertexSet::from([0, 1])],
        );
        assert!(!check_condition_iii(&hub, &two, 1));
        let pendant = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let pendant = ProjectionTrace::from_cliques(&pendant, &[VertexSet::from([0, 1])]).unwrap();
        assert!(!check_condition_v(&pendant, &two));
    }

    #[test]
    fn condition_iv_counterexample() {
        // 4 sees class {0, 2} only through 0, and W_1, W_2 are not adjacent in
        // the hypertree, so nothing produces the edge 2-4.
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (0, 4), (3, 5)]).unwrap();
        let cliques = vec![VertexSet::from([0, 1]), VertexSet::from([2, 3])];
        let t = ProjectionTrace::from_cliques(&g, &cliques).unwrap();
        let w = FacetWitness::new(
            vec![VertexSet::from([0, 2]), VertexSet::from([1, 3])],
            cliques,
        );
        assert!(!check_condition_iv(&t, &w));
        assert!(!t.current().has_edge(2, 4));
        let lone = ProjectionTrace::from_cliques(&g, &[VertexSet::from([2, 3])]).unwrap();
        let vacuous = FacetWitness::new(
            vec![VertexSet::from([2]), VertexSet::from([3])],
            vec![VertexSet::from([2, 3])],
        );
        assert!(check_condition_iv(&lone, &vacuous));
    }

    #[test]
    fn interwv_cases() {
        assert!(check_interwv(&figure_witness(), 3));
        let wrong = FacetWitness::new(
            vec![labels(&[1, 2]), labels(&[3])],
            vec![labels(&[1, 2, 3])],
        );
        assert!(!check_interwv(&wrong, 1));
        let singles = FacetWitness::new(
            vec![VertexSet::from([0, 1])],
            vec![VertexSet::from([0]), VertexSet::from([1])],
        );
        assert!(check_interwv(&singles, 2));
    }

    #[test]
    fn hypertrees() {
        let w = figure_witness();
        assert!((1..=3).all(|t| check_strong_hypertree(&w, t)));
        let disjoint = FacetWitness::new(
            vec![VertexSet::from([0, 2]), VertexSet::from([1, 3])],
            vec![VertexSet::from([0, 1]), VertexSet::from([2, 3])],
        );
        assert!(check_strong_hypertree(&disjoint, 1));
        assert!(!check_strong_hypertree(&disjoint, 2));
    }

    #[test]
    fn dimensions() {
        let g = figure1_graph();
        let t = figure_trace();
        assert_eq!(
            face_dimension(&g, &face_equalities(&t, 3))
                .unwrap()
                .affine_dim,
            5
        );
        let full = face_dimension(&g, &[]).unwrap();
        assert_eq!(full.affine_dim, 8);
        assert_eq!(full.witness_points.len(), 9);
        let mut iso = Graph::empty(4);
        iso = iso.with_edges(&[(0, 1)]).unwrap();
        assert_eq!(
            face_dimension(&iso, &[Inequality::new([(3, 1)], 1)])
                .unwrap()
                .affine_dim,
            3
        );
        assert_eq!(
            face_dimension(&g, &[Inequality::new((0..8).map(|v| (v, 1)), 4)])
                .unwrap()
                .affine_dim,
            -1
        );
    }

    #[test]
    fn strengthened_cut_is_facet() {
        let cut = strengthened_lift(&figure_trace(), &figure2_seed(), 3, None).unwrap();
        for t in 0..=3 {
            let report = assert_facet_of_ft(&cut, t, Some(&figure_witness())).unwrap();
            assert!(report.facet && report.consistent(), "{report:?}");
            assert_eq!(report.face_dim, 8 - t as i64);
        }
        let slack = LinearForm {
            constant: cut.forms[0].constant - 1,
            ..cut.forms[0].clone()
        };
        assert!(!assert_facet_of_form(&cut.trace, &slack, 0).unwrap().facet);
    }

    #[test]
    fn class_equality_and_isomorphism() {
        let t = figure_trace();
        let w = figure_witness();
        assert!((1..=3).all(|s| verify_class_equality(&t, &w, s).unwrap()));
        let report = verify_isomorphism(&t, &w).unwrap();
        assert!(report.holds, "{report:?}");
        let mut bad = w.clone();
        bad.representative = Some(labels(&[2]));
        assert!(matches!(
            verify_isomorphism(&t, &bad),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn isomorphism_fails_without_condition_v() {
        let g = Graph::from_edges(6, [(0, 5), (1, 4), (1, 5), (2, 3), (3, 4), (4, 5)]).unwrap();
        let cliques = vec![VertexSet::from([3, 4]), VertexSet::from([2, 3])];
        let t = ProjectionTrace::from_cliques(&g, &cliques).unwrap();
        let mut w = FacetWitness::new(vec![VertexSet::from([3]), VertexSet::from([2, 4])], cliques);
        w.representative = Some(VertexSet::from([3]));
        let report = check_conditions(&t, &w, None).unwrap();
        assert!(report.first_claim() && !report.condition_v);
        let iso = verify_isomorphism(&t, &w).unwrap();
        assert!(!iso.holds && iso.counterexample.is_some());
    }

    #[test]
    fn witness_search_recovers_figure() {
        let found = find_witness(&figure_trace(), &figure2_seed()).expect("witness exists");
        assert_eq!(found.classes[2], labels(&[1]));
    }
}

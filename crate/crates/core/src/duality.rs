//! Crisp topologies and their quantale-valued companions.
//!
//! Three related constructions live here:
//!
//! * the *scale* space `ω_Q(X)` of a crisp topological space `X`: fuzzy
//!   sets whose level sets at every coprime are crisp-closed form a
//!   stratified cotopology;
//! * negation duality: over a quantale with involutive negation, open and
//!   closed families determine each other by pointwise `¬`;
//! * "points" of the open-set side: maps `g` from the open family to `Q`
//!   respecting constants, finite meets, joins and scalar multiples
//!   correspond exactly to irreducible closed sets via
//!   `f_F(U) = ⋁_x F(x) & U(x)`.
//!
//! Crisp subsets are bitmasks over the point set (so at most 63 points,
//! far beyond anything the finite suites touch).

use std::sync::Arc;

use crate::cotopology::{Cotopology, Mode};
use crate::error::{Error, Result};
use crate::fuzzy::{self, FuzzySet, PointSet};
use crate::quantale::{El, Quantale};
use crate::sobriety::{self, SoberReport};

/// A crisp topological space presented by its closed subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispTopology {
    space: Arc<PointSet>,
    /// Sorted bitmasks; always contains `0` (empty) and the full mask.
    closed: Vec<u64>,
}

impl CrispTopology {
    pub fn new(space: &Arc<PointSet>, closed: Vec<u64>) -> Result<Self> {
        let n = space.len();
        if n > 63 {
            return Err(Error::BadInput(format!("crisp spaces cap out at 63 points, got {n}")));
        }
        let full = full_mask(n);
        let mut closed = closed;
        closed.sort_unstable();
        closed.dedup();
        if let Some(&m) = closed.iter().find(|&&m| m & !full != 0) {
            return Err(Error::BadInput(format!("closed subset mask {m:#b} mentions unknown points")));
        }
        let fail = |law: &'static str, masks: &[u64]| Error::LawViolation {
            law,
            witness: masks.iter().map(|&m| mask_label_raw(space, m)).collect(),
        };
        if !closed.contains(&0) {
            return Err(fail("crisp.empty", &[]));
        }
        if !closed.contains(&full) {
            return Err(fail("crisp.full", &[]));
        }
        for &a in &closed {
            for &b in &closed {
                if closed.binary_search(&(a | b)).is_err() {
                    return Err(fail("crisp.unions", &[a, b]));
                }
                if closed.binary_search(&(a & b)).is_err() {
                    return Err(fail("crisp.intersections", &[a, b]));
                }
            }
        }
        Ok(Self { space: Arc::clone(space), closed })
    }

    /// All subsets closed: the discrete space.
    pub fn discrete(space: &Arc<PointSet>) -> Result<Self> {
        let n = space.len();
        Self::new(space, (0..=full_mask(n)).collect())
    }

    /// Only `∅` and `X` closed.
    pub fn indiscrete(space: &Arc<PointSet>) -> Result<Self> {
        Self::new(space, vec![0, full_mask(space.len())])
    }

    pub fn space(&self) -> &Arc<PointSet> {
        &self.space
    }

    pub fn closed_masks(&self) -> &[u64] {
        &self.closed
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.closed.binary_search(&mask).is_ok()
    }

    /// Smallest closed superset.
    pub fn closure(&self, mask: u64) -> u64 {
        self.closed
            .iter()
            .filter(|&&c| c & mask == mask)
            .fold(full_mask(self.space.len()), |acc, &c| acc & c)
    }

    /// Nonempty closed `K` with `K ⊆ A ∪ B ⟹ K ⊆ A or K ⊆ B`.
    pub fn irreducible_closed_subsets(&self) -> Vec<u64> {
        self.closed
            .iter()
            .copied()
            .filter(|&k| {
                k != 0
                    && self.closed.iter().all(|&a| {
                        self.closed.iter().all(|&b| {
                            k & !(a | b) != 0 || k & !a == 0 || k & !b == 0
                        })
                    })
            })
            .collect()
    }

    /// Sobriety in the classical sense: every irreducible closed subset is
    /// the closure of exactly one point.
    pub fn is_sober(&self) -> CrispSoberReport {
        let irreducibles = self.irreducible_closed_subsets();
        let mut counts = vec![0usize; irreducibles.len()];
        for x in 0..self.space.len() {
            let cl = self.closure(1 << x);
            if let Ok(i) = irreducibles.binary_search(&cl) {
                counts[i] += 1;
            }
        }
        let witnesses: Vec<(u64, usize)> = irreducibles
            .iter()
            .zip(&counts)
            .filter(|&(_, &c)| c != 1)
            .map(|(&m, &c)| (m, c))
            .collect();
        CrispSoberReport { sober: witnesses.is_empty(), irreducibles, witnesses }
    }

    /// Renders a mask as `{x, y}` for reports.
    pub fn mask_label(&self, mask: u64) -> String {
        mask_label_raw(&self.space, mask)
    }
}

/// Verdict of the crisp sober check, with the irreducibles and the ones
/// witnessing failure (closure of `≠ 1` points).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispSoberReport {
    pub sober: bool,
    pub irreducibles: Vec<u64>,
    pub witnesses: Vec<(u64, usize)>,
}

fn full_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

fn mask_label_raw(space: &Arc<PointSet>, mask: u64) -> String {
    let names: Vec<&str> = (0..space.len())
        .filter(|&x| mask & (1 << x) != 0)
        .map(|x| space.name(x))
        .collect();
    format!("{{{}}}", names.join(","))
}

/// Every crisp topology on the given points (presented by closed-subset
/// families). Exhaustive over the `2^(2^n)` candidate families, so the
/// point set is capped at 4.
pub fn all_crisp_topologies(space: &Arc<PointSet>) -> Result<Vec<CrispTopology>> {
    let n = space.len();
    if n > 4 {
        return Err(Error::BadInput(format!(
            "exhaustive topology enumeration caps out at 4 points, got {n}"
        )));
    }
    let full = full_mask(n);
    let optional: Vec<u64> = (1..full).collect();
    let mut out = Vec::new();
    for pick in 0..(1u64 << optional.len()) {
        let mut closed = vec![0, full];
        for (i, &m) in optional.iter().enumerate() {
            if pick & (1 << i) != 0 {
                closed.push(m);
            }
        }
        if let Ok(t) = CrispTopology::new(space, closed) {
            out.push(t);
        }
    }
    Ok(out)
}

/// The level set `{x : λ(x) ≥ p}` as a bitmask.
pub fn level_set(q: &Quantale, lam: &FuzzySet, p: El) -> u64 {
    lam.values()
        .iter()
        .enumerate()
        .filter(|&(_, &v)| q.leq(p, v))
        .fold(0u64, |acc, (x, _)| acc | (1 << x))
}

/// The scale space `ω_Q(X)`: fuzzy sets whose level sets at every coprime
/// are crisp-closed. Requires enough coprimes (checking coprime levels is
/// then equivalent to checking all levels) and enumerates `Q^X` under
/// `cap`.
pub fn lowen(q: &Quantale, x: &CrispTopology, cap: usize) -> Result<Cotopology> {
    if !q.has_enough_coprimes() {
        return Err(Error::NotEnoughCoprimes);
    }
    let coprimes = q.coprimes();
    let mut closed = Vec::new();
    for lam in fuzzy::enumerate(q, &x.space, cap)? {
        if coprimes.iter().all(|&p| x.contains(level_set(q, &lam, p))) {
            closed.push(lam);
        }
    }
    Cotopology::new(&x.space, closed, Mode::Stratified, q)
}

/// Outcome of comparing crisp sobriety of `X` with sobriety of `ω_Q(X)`.
#[derive(Debug, Clone)]
pub struct GoodExtension {
    pub crisp: CrispSoberReport,
    pub scale: SoberReport,
    /// `sober(X) ⟺ sober(ω_Q(X))`.
    pub holds: bool,
}

/// Checks that scaling preserves and reflects sobriety. Only linear
/// quantales are accepted; the equivalence is known to break already over
/// the four-element diamond.
pub fn good_extension_check(q: &Quantale, x: &CrispTopology, cap: usize) -> Result<GoodExtension> {
    if !q.is_linear() {
        return Err(Error::NonLinearQuantale);
    }
    let crisp = x.is_sober();
    let scale = sobriety::is_sober(q, &lowen(q, x, cap)?);
    let holds = crisp.sober == scale.is_sober();
    Ok(GoodExtension { crisp, scale, holds })
}

/// Scaling axioms on the open-set side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopMode {
    Weak,
    Stratified,
}

impl TopMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(TopMode::Weak),
            "stratified" => Ok(TopMode::Stratified),
            other => Err(Error::BadInput(format!("unknown topology mode `{other}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TopMode::Weak => "weak",
            TopMode::Stratified => "stratified",
        }
    }
}

/// A quantale-valued topology: constants, finite meets, arbitrary joins,
/// and — when stratified — scalar multiples `p & U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTopology {
    space: Arc<PointSet>,
    open: Vec<FuzzySet>,
    mode: TopMode,
}

impl QTopology {
    pub fn new(
        space: &Arc<PointSet>,
        open: Vec<FuzzySet>,
        mode: TopMode,
        q: &Quantale,
    ) -> Result<Self> {
        for u in &open {
            if !fuzzy::same_space(space, u.space()) {
                return Err(Error::SpaceMismatch);
            }
        }
        let open = fuzzy::canonicalize(open);
        let topo = Self { space: Arc::clone(space), open, mode };
        let fail = |law: &'static str| Error::LawViolation {
            law,
            witness: vec![format!("family of {} open sets", topo.open.len())],
        };
        if !q
            .elements()
            .all(|p| topo.contains(&FuzzySet::constant(space, p)))
        {
            return Err(fail("topology.constants"));
        }
        for u in &topo.open {
            for v in &topo.open {
                if !topo.contains(&fuzzy::meet(q, u, v)?) {
                    return Err(fail("topology.meets"));
                }
                if !topo.contains(&fuzzy::join(q, u, v)?) {
                    return Err(fail("topology.joins"));
                }
            }
            if mode == TopMode::Stratified {
                for p in q.elements() {
                    if !topo.contains(&fuzzy::tensor_scale(q, p, u)) {
                        return Err(fail("topology.stratified"));
                    }
                }
            }
        }
        Ok(topo)
    }

    pub fn space(&self) -> &Arc<PointSet> {
        &self.space
    }

    pub fn open(&self) -> &[FuzzySet] {
        &self.open
    }

    pub fn len(&self) -> usize {
        self.open.len()
    }

    pub fn is_empty(&self) -> bool {
        self.open.is_empty()
    }

    pub fn mode(&self) -> TopMode {
        self.mode
    }

    pub fn contains(&self, u: &FuzzySet) -> bool {
        self.index_of(u).is_some()
    }

    pub fn index_of(&self, u: &FuzzySet) -> Option<usize> {
        fuzzy::position(&self.open, u)
    }
}

fn require_double_negation(q: &Quantale) -> Result<()> {
    if let Some(p) = q.double_negation_witness() {
        return Err(Error::NoDoubleNegation { witness: q.label(p).to_string() });
    }
    Ok(())
}

/// Opens of the dual topology: pointwise negations of the closed sets.
pub fn negate_cotopology(q: &Quantale, tau: &Cotopology) -> Result<QTopology> {
    require_double_negation(q)?;
    let open: Vec<FuzzySet> = tau.closed().iter().map(|a| fuzzy::neg(q, a)).collect();
    let mode = if tau.is_stratified(q) { TopMode::Stratified } else { TopMode::Weak };
    QTopology::new(tau.space(), open, mode, q)
}

/// Closed sets of the dual cotopology: pointwise negations of the opens.
pub fn negate_topology(q: &Quantale, topo: &QTopology) -> Result<Cotopology> {
    require_double_negation(q)?;
    let closed: Vec<FuzzySet> = topo.open.iter().map(|u| fuzzy::neg(q, u)).collect();
    let mode = if topo.mode == TopMode::Stratified { Mode::Stratified } else { Mode::Plain };
    Cotopology::new(&topo.space, closed, mode, q)
}

/// An assignment from the open family (by canonical index) to `Q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FrMap {
    values: Vec<El>,
}

impl FrMap {
    pub fn values(&self) -> &[El] {
        &self.values
    }

    pub fn value(&self, open_index: usize) -> El {
        self.values[open_index]
    }
}

/// Evaluation of every open at a fixed point: `U ↦ U(x)`.
pub fn point_evaluation(topo: &QTopology, x: usize) -> FrMap {
    FrMap { values: topo.open.iter().map(|u| u.value(x)).collect() }
}

/// `f_F(U) = ⋁_x F(x) & U(x)` for an irreducible closed set `F` of the
/// dual cotopology.
pub fn fr_map_of_irreducible(q: &Quantale, topo: &QTopology, f: &FuzzySet) -> Result<FrMap> {
    if !fuzzy::same_space(&topo.space, f.space()) {
        return Err(Error::SpaceMismatch);
    }
    let values = topo
        .open
        .iter()
        .map(|u| {
            q.join_all(
                f.values()
                    .iter()
                    .zip(u.values())
                    .map(|(&fv, &uv)| q.tensor(fv, uv)),
            )
        })
        .collect();
    Ok(FrMap { values })
}

/// The name of the first frame-map law `g` violates, or `None` if `g`
/// satisfies all of them. Requires a stratified topology (the scalar law
/// quantifies over `p & U`).
///
/// The join law is checked over all subfamilies of size ≤ 3 plus the full
/// family; in a finite family, binary joins and the empty join already
/// force the rest.
pub fn fr_violation(q: &Quantale, topo: &QTopology, g: &FrMap) -> Option<&'static str> {
    assert_eq!(topo.mode, TopMode::Stratified, "frame maps need a stratified topology");
    assert_eq!(g.values.len(), topo.len(), "assignment indexes the open family");
    let index_of = |u: &FuzzySet| topo.index_of(u).expect("validated topology is closed under its operations");
    for p in q.elements() {
        if g.value(index_of(&FuzzySet::constant(&topo.space, p))) != p {
            return Some("constants");
        }
    }
    let n = topo.len();
    // Pairwise join/meet index tables make the size-3 sweep O(1) per probe.
    let joins: Vec<Vec<usize>> = topo
        .open
        .iter()
        .map(|u| {
            topo.open
                .iter()
                .map(|v| index_of(&fuzzy::join(q, u, v).expect("same space")))
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            let meet = index_of(&fuzzy::meet(q, &topo.open[i], &topo.open[j]).expect("same space"));
            if g.value(meet) != q.meet(g.value(i), g.value(j)) {
                return Some("finite meets");
            }
            if g.value(joins[i][j]) != q.join(g.value(i), g.value(j)) {
                return Some("joins");
            }
            for k in 0..n {
                if g.value(joins[joins[i][j]][k])
                    != q.join(q.join(g.value(i), g.value(j)), g.value(k))
                {
                    return Some("joins");
                }
            }
        }
    }
    if n > 0 {
        let mut acc_ix = 0usize;
        let mut acc_val = g.value(0);
        for i in 1..n {
            acc_ix = joins[acc_ix][i];
            acc_val = q.join(acc_val, g.value(i));
        }
        if g.value(acc_ix) != acc_val {
            return Some("joins");
        }
    }
    for p in q.elements() {
        for i in 0..n {
            let scaled = index_of(&fuzzy::tensor_scale(q, p, &topo.open[i]));
            if g.value(scaled) != q.tensor(p, g.value(i)) {
                return Some("scalars");
            }
        }
    }
    None
}

pub fn is_fr_map(q: &Quantale, topo: &QTopology, g: &FrMap) -> bool {
    fr_violation(q, topo, g).is_none()
}

/// Recovers the closed set behind a frame map:
/// `F = ⋀{¬U : U open, g(U) = 0}`.
pub fn fr_recover(q: &Quantale, topo: &QTopology, g: &FrMap) -> FuzzySet {
    let mut acc = FuzzySet::constant(&topo.space, q.top());
    for (i, u) in topo.open.iter().enumerate() {
        if g.value(i) == q.bottom() {
            acc = fuzzy::meet(q, &acc, &fuzzy::neg(q, u)).expect("same space");
        }
    }
    acc
}

/// A frame map named by the irreducible closed set it evaluates.
#[derive(Debug, Clone)]
pub struct FrPoint {
    pub irreducible: FuzzySet,
    pub map: FrMap,
}

/// All frame maps of a stratified topology over a double-negation
/// quantale, via the bijection with irreducible closed sets of the dual
/// cotopology. Each map is checked against the frame laws and its
/// recovered closed set on the way out.
pub fn fr_points(q: &Quantale, topo: &QTopology) -> Result<Vec<FrPoint>> {
    let tau = negate_topology(q, topo)?;
    let mut out = Vec::new();
    for f in sobriety::irreducible_closed_sets(q, &tau) {
        let map = fr_map_of_irreducible(q, topo, &f)?;
        debug_assert!(is_fr_map(q, topo, &map));
        debug_assert_eq!(fr_recover(q, topo, &map), f);
        out.push(FrPoint { irreducible: f, map });
    }
    Ok(out)
}

/// Brute-force frame-map enumeration: every assignment table, filtered by
/// the frame laws. Exponential (`|Q|^|open|`), so capped; used as a
/// cross-check oracle for [`fr_points`] at tiny scale.
pub fn fr_maps_brute(q: &Quantale, topo: &QTopology, cap: usize) -> Result<Vec<FrMap>> {
    q.size()
        .checked_pow(topo.len() as u32)
        .filter(|&t| t <= cap)
        .ok_or(Error::CapExceeded {
            what: "brute-force frame-map enumeration",
            cap,
            flag: crate::fuzzy::ENUM_CAP_FLAG,
        })?;
    let mut out = Vec::new();
    let mut values = vec![0usize; topo.len()];
    loop {
        let g = FrMap { values: values.clone() };
        if is_fr_map(q, topo, &g) {
            out.push(g);
        }
        let mut i = topo.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            values[i] += 1;
            if values[i] < q.size() {
                break;
            }
            values[i] = 0;
        }
    }
}

/// Sobriety on the open-set side: every frame map is evaluation at
/// exactly one point. Agrees with the closed-set sober check on the dual
/// cotopology.
pub fn is_sober_topological(q: &Quantale, topo: &QTopology) -> Result<bool> {
    let points = fr_points(q, topo)?;
    let evals: Vec<FrMap> = (0..topo.space.len())
        .map(|x| point_evaluation(topo, x))
        .collect();
    Ok(points
        .iter()
        .all(|fp| evals.iter().filter(|e| **e == fp.map).count() == 1))
}

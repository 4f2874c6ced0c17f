//! Cotopologies valued in a quantale: families of "closed" fuzzy sets
//! containing all constants and closed under binary joins and arbitrary
//! meets, optionally also under the scalings `p → (-)` (stratified) and
//! `p & (-)` (costratified).
//!
//! Families are finite here, so "arbitrary meets" reduces to binary meets
//! plus the top constant, and generation from a subbasis is a terminating
//! worklist fixpoint (subject to a cap).

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzy::{self, FuzzySet, PointMap, PointSet};
use crate::qorder::QOrder;
use crate::quantale::{El, Quantale};

/// Flag text for errors raised by the generation fixpoint.
pub const COTOPOLOGY_CAP_FLAG: &str = "--cap-cotopology / QSOBER_CAP_COTOPOLOGY";

/// Default cap on generated families.
pub const DEFAULT_COTOPOLOGY_CAP: usize = 20_000;

/// Which scaling axioms a family is asked to satisfy. Modes form a
/// lattice with `Strong = Stratified ∧ Costratified` at the bottom end of
/// permissiveness; [`Mode::common`] is the lattice meet used for products.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Stratified,
    Costratified,
    Strong,
}

impl Mode {
    pub fn stratified(self) -> bool {
        matches!(self, Mode::Stratified | Mode::Strong)
    }

    pub fn costratified(self) -> bool {
        matches!(self, Mode::Costratified | Mode::Strong)
    }

    /// The strongest mode implied by both arguments.
    pub fn common(self, other: Mode) -> Mode {
        Mode::from_flags(
            self.stratified() && other.stratified(),
            self.costratified() && other.costratified(),
        )
    }

    pub fn from_flags(stratified: bool, costratified: bool) -> Mode {
        match (stratified, costratified) {
            (false, false) => Mode::Plain,
            (true, false) => Mode::Stratified,
            (false, true) => Mode::Costratified,
            (true, true) => Mode::Strong,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Mode::Plain),
            "stratified" => Ok(Mode::Stratified),
            "costratified" => Ok(Mode::Costratified),
            "strong" => Ok(Mode::Strong),
            other => Err(Error::BadInput(format!("unknown cotopology mode `{other}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Stratified => "stratified",
            Mode::Costratified => "costratified",
            Mode::Strong => "strong",
        }
    }
}

/// Which axioms actually hold for a family, independent of the mode it was
/// requested with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Axioms {
    pub constants: bool,
    pub joins: bool,
    pub meets: bool,
    pub stratified: bool,
    pub costratified: bool,
}

/// A validated cotopology. The closed family is canonical: sorted by
/// value sequence and deduplicated, so members have stable indices.
///
/// `mode` records what was requested at construction time; the validator
/// re-derives which scaling axioms actually hold (see [`Cotopology::axioms`]),
/// and both appear in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cotopology {
    space: Arc<PointSet>,
    closed: Vec<FuzzySet>,
    mode: Mode,
}

impl Cotopology {
    /// Validates the family against C1–C3 plus the scaling axioms of
    /// `mode`, and canonicalizes it.
    pub fn new(
        space: &Arc<PointSet>,
        closed: Vec<FuzzySet>,
        mode: Mode,
        q: &Quantale,
    ) -> Result<Self> {
        for a in &closed {
            check_member(space, a, q)?;
        }
        let closed = fuzzy::canonicalize(closed);
        let tau = Self { space: Arc::clone(space), closed, mode };
        let axioms = tau.axioms(q);
        let fail = |law: &'static str| Error::LawViolation {
            law,
            witness: vec![format!("family of {} closed sets", tau.closed.len())],
        };
        if !axioms.constants {
            return Err(fail("cotopology.constants"));
        }
        if !axioms.joins {
            return Err(fail("cotopology.joins"));
        }
        if !axioms.meets {
            return Err(fail("cotopology.meets"));
        }
        if mode.stratified() && !axioms.stratified {
            return Err(fail("cotopology.stratified"));
        }
        if mode.costratified() && !axioms.costratified {
            return Err(fail("cotopology.costratified"));
        }
        Ok(tau)
    }

    /// Generates the smallest family containing `subbasis` that satisfies
    /// C1–C3 and the scaling axioms of `mode`.
    pub fn generate(
        q: &Quantale,
        space: &Arc<PointSet>,
        subbasis: &[FuzzySet],
        mode: Mode,
        cap: usize,
    ) -> Result<Self> {
        let (family, _) = saturate(q, space, subbasis, mode, cap, None)?;
        let closed = family
            .into_iter()
            .map(|values| FuzzySet::from_values(space, values))
            .collect();
        // The fixpoint is closed under everything it was asked for; the
        // validator re-checks as a guard against generator bugs.
        Self::new(space, closed, mode, q)
    }

    /// The discrete cotopology: all of `Q^X`.
    pub fn discrete(q: &Quantale, space: &Arc<PointSet>, cap: usize) -> Result<Self> {
        Self::new(space, fuzzy::enumerate(q, space, cap)?, Mode::Strong, q)
    }

    /// The indiscrete cotopology: constants only.
    pub fn indiscrete(q: &Quantale, space: &Arc<PointSet>) -> Self {
        let closed = q.elements().map(|p| FuzzySet::constant(space, p)).collect();
        Self::new(space, closed, Mode::Strong, q)
            .expect("the constant family satisfies every axiom")
    }

    pub fn space(&self) -> &Arc<PointSet> {
        &self.space
    }

    pub fn closed(&self) -> &[FuzzySet] {
        &self.closed
    }

    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn contains(&self, a: &FuzzySet) -> bool {
        self.index_of(a).is_some()
    }

    /// Canonical index of a closed set in the family.
    pub fn index_of(&self, a: &FuzzySet) -> Option<usize> {
        fuzzy::position(&self.closed, a)
    }

    /// Re-derives which axioms actually hold for the family.
    pub fn axioms(&self, q: &Quantale) -> Axioms {
        let constants = q
            .elements()
            .all(|p| self.contains(&FuzzySet::constant(&self.space, p)));
        let mut joins = true;
        let mut meets = true;
        'pairs: for a in &self.closed {
            for b in &self.closed {
                joins &= self.contains(&fuzzy::join(q, a, b).expect("same space"));
                meets &= self.contains(&fuzzy::meet(q, a, b).expect("same space"));
                if !joins && !meets {
                    break 'pairs;
                }
            }
        }
        let mut stratified = true;
        let mut costratified = true;
        for a in &self.closed {
            for p in q.elements() {
                stratified &= self.contains(&fuzzy::res_scale(q, p, a));
                costratified &= self.contains(&fuzzy::tensor_scale(q, p, a));
            }
            if !stratified && !costratified {
                break;
            }
        }
        Axioms { constants, joins, meets, stratified, costratified }
    }

    /// The strongest mode the family actually satisfies.
    pub fn derived_mode(&self, q: &Quantale) -> Mode {
        let ax = self.axioms(q);
        Mode::from_flags(ax.stratified, ax.costratified)
    }

    /// Whether the family actually satisfies the stratification axiom,
    /// regardless of the requested mode.
    pub fn is_stratified(&self, q: &Quantale) -> bool {
        self.axioms(q).stratified
    }

    /// Closure `Ā = ⋀{B closed : A ≤ B}`. Always lands in the family.
    pub fn closure(&self, q: &Quantale, a: &FuzzySet) -> Result<FuzzySet> {
        check_member(&self.space, a, q)?;
        let mut acc = FuzzySet::constant(&self.space, q.top());
        for b in &self.closed {
            if a.leq(b, q)? {
                acc = fuzzy::meet(q, &acc, b)?;
            }
        }
        debug_assert!(self.contains(&acc), "closure must be a closed set");
        Ok(acc)
    }

    /// The specialization `Q`-order `Ω(τ)(x, y) = ⋀_{A closed} A(y) → A(x)`.
    pub fn specialization(&self, q: &Quantale) -> QOrder {
        let n = self.space.len();
        let rel: Vec<Vec<El>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        q.meet_all(self.closed.iter().map(|a| q.res(a.value(y), a.value(x))))
                    })
                    .collect()
            })
            .collect();
        QOrder::new(&self.space, rel, q).expect("specialization is always a Q-order")
    }

    /// Whether the diagonal is closed in `self × self`.
    ///
    /// Runs the product generation with an early exit as soon as the
    /// diagonal appears, so a positive answer does not require the full
    /// product family.
    pub fn is_hausdorff(&self, q: &Quantale, cap: usize) -> Result<bool> {
        let (pairs, subbasis) = product_subbasis(q, self, self)?;
        let n = self.space.len();
        let mut diag = vec![q.bottom(); pairs.len()];
        for x in 0..n {
            diag[x * n + x] = q.top();
        }
        let (_, found) = saturate(
            q,
            &pairs,
            &subbasis,
            self.mode.common(self.mode),
            cap,
            Some(&diag),
        )?;
        Ok(found)
    }
}

/// The product of two cotopologies: generated on `X × Y` by the preimages
/// of closed sets under both projections, in the common mode.
pub fn product(q: &Quantale, tx: &Cotopology, ty: &Cotopology, cap: usize) -> Result<Cotopology> {
    let (pairs, subbasis) = product_subbasis(q, tx, ty)?;
    Cotopology::generate(q, &pairs, &subbasis, tx.mode.common(ty.mode), cap)
}

/// Point set `X × Y` (named `(x,y)`, row-major in `X`) together with the
/// projection preimages of both closed families.
fn product_subbasis(
    q: &Quantale,
    tx: &Cotopology,
    ty: &Cotopology,
) -> Result<(Arc<PointSet>, Vec<FuzzySet>)> {
    let (nx, ny) = (tx.space.len(), ty.space.len());
    let mut names = Vec::with_capacity(nx * ny);
    for x in 0..nx {
        for y in 0..ny {
            names.push(format!("({},{})", tx.space.name(x), ty.space.name(y)));
        }
    }
    let pairs = PointSet::new(names)?;
    let mut subbasis = Vec::with_capacity(tx.len() + ty.len());
    for a in &tx.closed {
        let values = (0..nx).flat_map(|x| vec![a.value(x); ny]).collect();
        subbasis.push(FuzzySet::new(&pairs, values, q)?);
    }
    for b in &ty.closed {
        let values = (0..nx).flat_map(|_| b.values().to_vec()).collect();
        subbasis.push(FuzzySet::new(&pairs, values, q)?);
    }
    Ok((pairs, subbasis))
}

/// First closed set of `dst` whose preimage under `f` is not closed in
/// `src`, if any. `None` means `f` is continuous.
pub fn continuity_witness(
    f: &PointMap,
    src: &Cotopology,
    dst: &Cotopology,
) -> Result<Option<FuzzySet>> {
    if !fuzzy::same_space(f.source(), &src.space) || !fuzzy::same_space(f.target(), &dst.space) {
        return Err(Error::SpaceMismatch);
    }
    for b in &dst.closed {
        if !src.contains(&preimage_unchecked(f, b)) {
            return Ok(Some(b.clone()));
        }
    }
    Ok(None)
}

pub fn is_continuous(f: &PointMap, src: &Cotopology, dst: &Cotopology) -> Result<bool> {
    Ok(continuity_witness(f, src, dst)?.is_none())
}

fn preimage_unchecked(f: &PointMap, b: &FuzzySet) -> FuzzySet {
    fuzzy::preimage(f, b).expect("spaces already checked")
}

fn check_member(space: &Arc<PointSet>, a: &FuzzySet, q: &Quantale) -> Result<()> {
    if !fuzzy::same_space(space, a.space()) {
        return Err(Error::SpaceMismatch);
    }
    if let Some(&v) = a.values().iter().find(|&&v| v >= q.size()) {
        return Err(Error::BadInput(format!(
            "fuzzy value {v} is out of range for a {}-element quantale",
            q.size()
        )));
    }
    Ok(())
}

/// Deterministic worklist fixpoint: closes `subbasis ∪ constants` under
/// binary joins, binary meets and the scalings requested by `mode`.
///
/// With `stop_at = Some(target)` the fixpoint exits early (returning
/// `true`) as soon as the target value vector is produced. Exceeding `cap`
/// is an error either way.
fn saturate(
    q: &Quantale,
    space: &Arc<PointSet>,
    subbasis: &[FuzzySet],
    mode: Mode,
    cap: usize,
    stop_at: Option<&[El]>,
) -> Result<(BTreeSet<Vec<El>>, bool)> {
    for a in subbasis {
        check_member(space, a, q)?;
    }
    let mut family: BTreeSet<Vec<El>> = q
        .elements()
        .map(|p| vec![p; space.len()])
        .chain(subbasis.iter().map(|a| a.values().to_vec()))
        .collect();
    if family.len() > cap {
        return Err(cap_error(cap));
    }
    if let Some(t) = stop_at {
        if family.contains(t) {
            return Ok((family, true));
        }
    }

    let mut frontier: Vec<Vec<El>> = family.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut fresh: BTreeSet<Vec<El>> = BTreeSet::new();
        {
            let mut emit = |values: Vec<El>, family: &BTreeSet<Vec<El>>| {
                if !family.contains(&values) {
                    fresh.insert(values);
                }
            };
            for a in &frontier {
                for b in family.iter() {
                    let join: Vec<El> =
                        a.iter().zip(b).map(|(&x, &y)| q.join(x, y)).collect();
                    emit(join, &family);
                    let meet: Vec<El> =
                        a.iter().zip(b).map(|(&x, &y)| q.meet(x, y)).collect();
                    emit(meet, &family);
                }
                for p in q.elements() {
                    if mode.stratified() {
                        emit(a.iter().map(|&x| q.res(p, x)).collect(), &family);
                    }
                    if mode.costratified() {
                        emit(a.iter().map(|&x| q.tensor(p, x)).collect(), &family);
                    }
                }
            }
        }
        frontier = fresh.iter().cloned().collect();
        family.extend(fresh);
        if family.len() > cap {
            return Err(cap_error(cap));
        }
        if let Some(t) = stop_at {
            if frontier.iter().any(|v| v == t) {
                return Ok((family, true));
            }
        }
    }
    let found = stop_at.map(|t| family.contains(t)).unwrap_or(false);
    Ok((family, found))
}

fn cap_error(cap: usize) -> Error {
    Error::CapExceeded {
        what: "cotopology generation",
        cap,
        flag: COTOPOLOGY_CAP_FLAG,
    }
}

//! Fuzzy sets `A : X → Q` over a finite point set, with the fuzzy
//! inclusion order
//!
//! ```text
//! sub(A, B) = ⋀_{x ∈ X} A(x) → B(x)
//! ```
//!
//! plus the pointwise lattice/scaling operations and the image/preimage
//! adjunction along point maps. Families of fuzzy sets are kept in a
//! canonical form: sorted by their value sequences and deduplicated.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quantale::{El, Quantale};

/// Flag text for errors raised by the pointwise enumerator.
pub const ENUM_CAP_FLAG: &str = "--cap-enum / QSOBER_CAP_ENUM";

/// Default cap on `|Q|^|X|` enumerations.
pub const DEFAULT_ENUM_CAP: usize = 100_000;

/// A finite set of named points. Empty point sets are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    names: Vec<String>,
}

impl PointSet {
    pub fn new(names: Vec<String>) -> Result<Arc<Self>> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::BadInput(format!("duplicate point name `{n}`")));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub(crate) fn same_space(a: &Arc<PointSet>, b: &Arc<PointSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A map `X → Q`, stored as one value per point.
///
/// Equality compares values and the underlying point set. Families are
/// ordered by comparing value sequences lexicographically (see
/// [`canonicalize`]); we deliberately do not implement `Ord` because
/// cross-space comparisons have no meaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzySet {
    space: Arc<PointSet>,
    values: Vec<El>,
}

impl FuzzySet {
    pub fn new(space: &Arc<PointSet>, values: Vec<El>, q: &Quantale) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::BadInput(format!(
                "fuzzy set has {} values for {} points",
                values.len(),
                space.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= q.size()) {
            return Err(Error::BadInput(format!(
                "fuzzy value {v} is out of range for a {}-element quantale",
                q.size()
            )));
        }
        Ok(Self { space: Arc::clone(space), values })
    }

    /// Used internally when values are known to be in range.
    pub(crate) fn from_values(space: &Arc<PointSet>, values: Vec<El>) -> Self {
        debug_assert_eq!(values.len(), space.len());
        Self { space: Arc::clone(space), values }
    }

    /// The constant map `p_X`.
    pub fn constant(space: &Arc<PointSet>, p: El) -> Self {
        Self::from_values(space, vec![p; space.len()])
    }

    /// The characteristic map `1_x`: top at `x`, bottom elsewhere.
    pub fn singleton(space: &Arc<PointSet>, x: usize, q: &Quantale) -> Self {
        let mut values = vec![q.bottom(); space.len()];
        values[x] = q.top();
        Self::from_values(space, values)
    }

    pub fn space(&self) -> &Arc<PointSet> {
        &self.space
    }

    pub fn value(&self, x: usize) -> El {
        self.values[x]
    }

    pub fn values(&self) -> &[El] {
        &self.values
    }

    /// `⋁_x A(x)`.
    pub fn sup(&self, q: &Quantale) -> El {
        q.join_all(self.values.iter().copied())
    }

    /// Pointwise order `A ≤ B`.
    pub fn leq(&self, other: &FuzzySet, q: &Quantale) -> Result<bool> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| q.leq(a, b)))
    }

    /// Values rendered as quantale labels, for reports.
    pub fn value_labels(&self, q: &Quantale) -> Vec<String> {
        self.values.iter().map(|&v| q.label(v).to_string()).collect()
    }
}

/// `sub(A, B) = ⋀_x A(x) → B(x)`; the empty meet is the top.
pub fn sub(q: &Quantale, a: &FuzzySet, b: &FuzzySet) -> Result<El> {
    if !same_space(&a.space, &b.space) {
        return Err(Error::SpaceMismatch);
    }
    Ok(q.meet_all(
        a.values
            .iter()
            .zip(&b.values)
            .map(|(&av, &bv)| q.res(av, bv)),
    ))
}

/// Pointwise join `A ∨ B`.
pub fn join(q: &Quantale, a: &FuzzySet, b: &FuzzySet) -> Result<FuzzySet> {
    zip_pointwise(a, b, |av, bv| q.join(av, bv))
}

/// Pointwise meet `A ∧ B`.
pub fn meet(q: &Quantale, a: &FuzzySet, b: &FuzzySet) -> Result<FuzzySet> {
    zip_pointwise(a, b, |av, bv| q.meet(av, bv))
}

/// Pointwise scaling `p & A`.
pub fn tensor_scale(q: &Quantale, p: El, a: &FuzzySet) -> FuzzySet {
    map_pointwise(a, |v| q.tensor(p, v))
}

/// Pointwise scaling `p → A`.
pub fn res_scale(q: &Quantale, p: El, a: &FuzzySet) -> FuzzySet {
    map_pointwise(a, |v| q.res(p, v))
}

/// Pointwise negation `¬A`.
pub fn neg(q: &Quantale, a: &FuzzySet) -> FuzzySet {
    map_pointwise(a, |v| q.neg(v))
}

fn map_pointwise(a: &FuzzySet, f: impl Fn(El) -> El) -> FuzzySet {
    FuzzySet::from_values(&a.space, a.values.iter().map(|&v| f(v)).collect())
}

fn zip_pointwise(a: &FuzzySet, b: &FuzzySet, f: impl Fn(El, El) -> El) -> Result<FuzzySet> {
    if !same_space(&a.space, &b.space) {
        return Err(Error::SpaceMismatch);
    }
    Ok(FuzzySet::from_values(
        &a.space,
        a.values
            .iter()
            .zip(&b.values)
            .map(|(&av, &bv)| f(av, bv))
            .collect(),
    ))
}

/// A map of point sets, used for images, preimages and continuity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMap {
    source: Arc<PointSet>,
    target: Arc<PointSet>,
    map: Vec<usize>,
}

impl PointMap {
    pub fn new(source: &Arc<PointSet>, target: &Arc<PointSet>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::BadInput(format!(
                "point map has {} entries for {} source points",
                map.len(),
                source.len()
            )));
        }
        if let Some(&y) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::BadInput(format!(
                "point map entry {y} is out of range for {} target points",
                target.len()
            )));
        }
        Ok(Self { source: Arc::clone(source), target: Arc::clone(target), map })
    }

    pub fn identity(space: &Arc<PointSet>) -> Self {
        Self {
            source: Arc::clone(space),
            target: Arc::clone(space),
            map: (0..space.len()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<PointSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PointSet> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn entries(&self) -> &[usize] {
        &self.map
    }
}

/// Forward image `f→(A)(y) = ⋁_{f(x) = y} A(x)`; empty fibers give the
/// bottom.
pub fn image(q: &Quantale, f: &PointMap, a: &FuzzySet) -> Result<FuzzySet> {
    if !same_space(&a.space, &f.source) {
        return Err(Error::SpaceMismatch);
    }
    let mut values = vec![q.bottom(); f.target.len()];
    for (x, &y) in f.map.iter().enumerate() {
        values[y] = q.join(values[y], a.values[x]);
    }
    Ok(FuzzySet::from_values(&f.target, values))
}

/// Preimage `f←(B) = B ∘ f`.
pub fn preimage(f: &PointMap, b: &FuzzySet) -> Result<FuzzySet> {
    if !same_space(&b.space, &f.target) {
        return Err(Error::SpaceMismatch);
    }
    Ok(FuzzySet::from_values(
        &f.source,
        f.map.iter().map(|&y| b.values[y]).collect(),
    ))
}

/// All of `Q^X` in lexicographic order of value sequences.
///
/// Fails with [`Error::CapExceeded`] when `|Q|^|X|` exceeds `cap`; the
/// empty point set yields the single empty map.
pub fn enumerate(q: &Quantale, space: &Arc<PointSet>, cap: usize) -> Result<Vec<FuzzySet>> {
    let total = q
        .size()
        .checked_pow(space.len() as u32)
        .filter(|&t| t <= cap)
        .ok_or(Error::CapExceeded {
            what: "pointwise enumeration of Q^X",
            cap,
            flag: ENUM_CAP_FLAG,
        })?;
    let mut out = Vec::with_capacity(total);
    let mut values = vec![0; space.len()];
    loop {
        out.push(FuzzySet::from_values(space, values.clone()));
        // Advance the base-|Q| counter, most significant digit first.
        let mut i = space.len();
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

/// Sorts a family by value sequence and removes duplicates.
pub fn canonicalize(mut family: Vec<FuzzySet>) -> Vec<FuzzySet> {
    family.sort_by(|a, b| a.values.cmp(&b.values));
    family.dedup_by(|a, b| a.values == b.values);
    family
}

/// Binary search for `a` in a canonical family.
pub fn position(family: &[FuzzySet], a: &FuzzySet) -> Option<usize> {
    family
        .binary_search_by(|probe| probe.values().cmp(a.values()))
        .ok()
}

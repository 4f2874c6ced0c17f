//! Quantale-valued orders: reflexive transitive `Q`-relations
//! `R : X × X → Q` with
//!
//! ```text
//! R(x, x) = 1          R(y, z) & R(x, y) ≤ R(x, z)
//! ```
//!
//! together with their (co)lower sets, irreducible lower sets, suprema and
//! the Alexandroff cotopology of all lower sets.

use std::sync::Arc;

use crate::cotopology::{Cotopology, Mode};
use crate::error::{Error, Result};
use crate::fuzzy::{self, FuzzySet, PointSet};
use crate::quantale::{El, Quantale};

/// A validated `Q`-order on a finite point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QOrder {
    space: Arc<PointSet>,
    rel: Vec<Vec<El>>,
}

impl QOrder {
    pub fn new(space: &Arc<PointSet>, rel: Vec<Vec<El>>, q: &Quantale) -> Result<Self> {
        let n = space.len();
        if rel.len() != n || rel.iter().any(|row| row.len() != n) {
            return Err(Error::BadInput(format!("relation must be a {n}x{n} table")));
        }
        if let Some(&v) = rel.iter().flatten().find(|&&v| v >= q.size()) {
            return Err(Error::BadInput(format!(
                "relation value {v} is out of range for a {}-element quantale",
                q.size()
            )));
        }
        for x in 0..n {
            if rel[x][x] != q.top() {
                return Err(Error::NotReflexive { point: space.name(x).to_string() });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !q.leq(q.tensor(rel[y][z], rel[x][y]), rel[x][z]) {
                        return Err(Error::NotTransitive {
                            x: space.name(x).to_string(),
                            y: space.name(y).to_string(),
                            z: space.name(z).to_string(),
                        });
                    }
                }
            }
        }
        Ok(Self { space: Arc::clone(space), rel })
    }

    /// The discrete order: top on the diagonal, bottom elsewhere.
    pub fn discrete(space: &Arc<PointSet>, q: &Quantale) -> Self {
        let n = space.len();
        let rel = (0..n)
            .map(|x| (0..n).map(|y| if x == y { q.top() } else { q.bottom() }).collect())
            .collect();
        Self { space: Arc::clone(space), rel }
    }

    /// The canonical left order `d_L(p, r) = p → r` on the carrier of `q`.
    pub fn d_left(q: &Quantale) -> Self {
        Self::carrier_order(q, |q, x, y| q.res(x, y))
    }

    /// The canonical right order `d_R(p, r) = r → p` on the carrier of `q`.
    pub fn d_right(q: &Quantale) -> Self {
        Self::carrier_order(q, |q, x, y| q.res(y, x))
    }

    fn carrier_order(q: &Quantale, f: impl Fn(&Quantale, El, El) -> El) -> Self {
        let space = PointSet::new(q.labels().to_vec()).expect("quantale labels are distinct");
        let rel = q
            .elements()
            .map(|x| q.elements().map(|y| f(q, x, y)).collect())
            .collect();
        let order = Self { space, rel };
        debug_assert!(order.rel.iter().enumerate().all(|(x, row)| row[x] == q.top()));
        order
    }

    pub fn space(&self) -> &Arc<PointSet> {
        &self.space
    }

    pub fn value(&self, x: usize, y: usize) -> El {
        self.rel[x][y]
    }

    pub fn table(&self) -> &[Vec<El>] {
        &self.rel
    }

    /// The opposite order `R^op(x, y) = R(y, x)`.
    pub fn opposite(&self) -> QOrder {
        let n = self.space.len();
        let rel = (0..n).map(|x| (0..n).map(|y| self.rel[y][x]).collect()).collect();
        Self { space: Arc::clone(&self.space), rel }
    }

    /// Whether `φ(y) & R(x, y) ≤ φ(x)` for all `x, y`.
    pub fn is_lower_set(&self, q: &Quantale, phi: &FuzzySet) -> Result<bool> {
        Ok(self.lower_set_witness(q, phi)?.is_none())
    }

    /// First `(x, y)` violating the lower-set inequality, if any.
    pub fn lower_set_witness(&self, q: &Quantale, phi: &FuzzySet) -> Result<Option<(usize, usize)>> {
        self.check_space(phi)?;
        let n = self.space.len();
        for x in 0..n {
            for y in 0..n {
                if !q.leq(q.tensor(phi.value(y), self.rel[x][y]), phi.value(x)) {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    /// Whether `R(x, y) & ψ(x) ≤ ψ(y)` for all `x, y`.
    pub fn is_upper_set(&self, q: &Quantale, psi: &FuzzySet) -> Result<bool> {
        self.check_space(psi)?;
        let n = self.space.len();
        for x in 0..n {
            for y in 0..n {
                if !q.leq(q.tensor(self.rel[x][y], psi.value(x)), psi.value(y)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The representable lower set `R(−, a)`.
    pub fn representable(&self, a: usize) -> FuzzySet {
        let n = self.space.len();
        FuzzySet::from_values(&self.space, (0..n).map(|x| self.rel[x][a]).collect())
    }

    /// All lower sets, canonically ordered; enumerates `Q^X` under `cap`.
    pub fn lower_sets(&self, q: &Quantale, cap: usize) -> Result<Vec<FuzzySet>> {
        let mut out = Vec::new();
        for phi in fuzzy::enumerate(q, &self.space, cap)? {
            if self.is_lower_set(q, &phi)? {
                out.push(phi);
            }
        }
        Ok(out)
    }

    /// Whether the lower set `φ` is irreducible: `⋁φ = 1` and
    /// `sub(φ, φ₁ ∨ φ₂) = sub(φ, φ₁) ∨ sub(φ, φ₂)` for all lower sets
    /// `φ₁, φ₂`.
    pub fn is_irreducible_lower_set(&self, q: &Quantale, phi: &FuzzySet, cap: usize) -> Result<bool> {
        assert!(
            self.is_lower_set(q, phi)?,
            "is_irreducible_lower_set expects a lower set"
        );
        if phi.sup(q) != q.top() {
            return Ok(false);
        }
        let lower = self.lower_sets(q, cap)?;
        for a in &lower {
            for b in &lower {
                let lhs = fuzzy::sub(q, phi, &fuzzy::join(q, a, b)?)?;
                let rhs = q.join(fuzzy::sub(q, phi, a)?, fuzzy::sub(q, phi, b)?);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Points `a` that are suprema of the lower set `φ`:
    /// `R(a, x) = ⋀_z (φ(z) → R(z, x))` for every `x`.
    pub fn suprema(&self, q: &Quantale, phi: &FuzzySet) -> Result<Vec<usize>> {
        self.check_space(phi)?;
        let n = self.space.len();
        let bound: Vec<El> = (0..n)
            .map(|x| q.meet_all((0..n).map(|z| q.res(phi.value(z), self.rel[z][x]))))
            .collect();
        Ok((0..n)
            .filter(|&a| (0..n).all(|x| self.rel[a][x] == bound[x]))
            .collect())
    }

    /// The Alexandroff cotopology: all lower sets. It is always strong,
    /// which the cotopology validator confirms on every call.
    pub fn alexandroff(&self, q: &Quantale, cap: usize) -> Result<Cotopology> {
        let lower = self.lower_sets(q, cap)?;
        Cotopology::new(&self.space, lower, Mode::Strong, q)
    }

    fn check_space(&self, phi: &FuzzySet) -> Result<()> {
        if !fuzzy::same_space(&self.space, phi.space()) {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }
}

/// Whether `f` is `Q`-order-preserving: `R_X(x, y) ≤ R_Y(f(x), f(y))`.
pub fn order_preserving(q: &Quantale, f: &crate::fuzzy::PointMap, rx: &QOrder, ry: &QOrder) -> Result<bool> {
    if !fuzzy::same_space(f.source(), &rx.space) || !fuzzy::same_space(f.target(), &ry.space) {
        return Err(Error::SpaceMismatch);
    }
    let n = rx.space.len();
    for x in 0..n {
        for y in 0..n {
            if !q.leq(rx.rel[x][y], ry.rel[f.apply(x)][f.apply(y)]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

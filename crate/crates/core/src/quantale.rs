//! Finite commutative integral quantales.
//!
//! A quantale here is a finite complete lattice `(Q, ≤)` carrying a
//! commutative monoid `(Q, &, 1)` whose unit is the top element and whose
//! multiplication distributes over arbitrary joins:
//!
//! | law                  | statement                                   |
//! |----------------------|---------------------------------------------|
//! | `order.*`            | `≤` is a partial order                      |
//! | `lattice.join/meet`  | every pair has a least upper / greatest lower bound |
//! | `lattice.bottom/top` | global extremes exist                       |
//! | `tensor.commutative` | `p & q = q & p`                             |
//! | `tensor.associative` | `p & (q & r) = (p & q) & r`                 |
//! | `tensor.unit`        | `1 & p = p`                                 |
//! | `tensor.distributive`| `p & (q ∨ r) = (p & q) ∨ (p & r)`, `p & 0 = 0` |
//! | `residuation.adjunction` | `p & q ≤ r ⟺ q ≤ p → r`                |
//!
//! Elements are plain `usize` indices into the label table; all structure
//! lives in small dense tables that are derived and exhaustively validated
//! at construction time, so a [`Quantale`] value is proof that the laws
//! hold.

use crate::error::{Error, Result};

/// An element of a finite quantale: an index into its label table.
pub type El = usize;

/// The stock quantales on the unit-interval chain plus the four-element
/// Boolean algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    /// Minimum t-norm: `a & b = min(a, b)`.
    Godel,
    /// Łukasiewicz t-norm: `a & b = max(a + b - 1, 0)`.
    Lukasiewicz,
    /// Nilpotent minimum: `a & b = 0` if `a + b ≤ 1`, else `min(a, b)`.
    NilpotentMin,
    /// The diamond `{0, a, b, 1}` with `& = ∧`.
    Boolean4,
    /// Product t-norm. Rejected: no finite chain is closed under it.
    Product,
}

impl StandardKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "godel" => Ok(Self::Godel),
            "lukasiewicz" => Ok(Self::Lukasiewicz),
            "nilpotent_min" => Ok(Self::NilpotentMin),
            "boolean4" => Ok(Self::Boolean4),
            "product" => Ok(Self::Product),
            other => Err(Error::BadInput(format!(
                "unknown standard quantale kind `{other}`"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Godel => "godel",
            Self::Lukasiewicz => "lukasiewicz",
            Self::NilpotentMin => "nilpotent_min",
            Self::Boolean4 => "boolean4",
            Self::Product => "product",
        }
    }
}

/// A validated finite commutative integral quantale.
///
/// All binary tables are `n × n` row-major; `join`, `meet` and `res` are
/// derived from `leq` and `tensor` during validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantale {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    tensor: Vec<Vec<El>>,
    join: Vec<Vec<El>>,
    meet: Vec<Vec<El>>,
    res: Vec<Vec<El>>,
    bottom: El,
    top: El,
}

impl Quantale {
    /// Builds and exhaustively validates a quantale from raw tables.
    ///
    /// Validation order is fixed (order laws, lattice completeness, monoid
    /// laws, distributivity, adjunction) and the first witness in index
    /// order is reported, so a given bad table always produces the same
    /// error.
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>, tensor: Vec<Vec<El>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::BadInput("quantale must have at least one element".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::BadInput(format!("duplicate element label `{l}`")));
            }
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::BadInput(format!("`leq` must be a {n}x{n} table")));
        }
        if tensor.len() != n || tensor.iter().any(|row| row.len() != n) {
            return Err(Error::BadInput(format!("`tensor` must be a {n}x{n} table")));
        }
        if let Some(&v) = tensor.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::BadInput(format!(
                "tensor entry {v} is out of range for {n} elements"
            )));
        }

        let witness = |ix: &[El]| ix.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>();
        let violation = |law: &'static str, ix: &[El]| Error::LawViolation {
            law,
            witness: witness(ix),
        };

        // Partial order.
        for p in 0..n {
            if !leq[p][p] {
                return Err(violation("order.reflexive", &[p]));
            }
        }
        for p in 0..n {
            for q in 0..n {
                if p != q && leq[p][q] && leq[q][p] {
                    return Err(violation("order.antisymmetric", &[p, q]));
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if leq[p][q] && leq[q][r] && !leq[p][r] {
                        return Err(violation("order.transitive", &[p, q, r]));
                    }
                }
            }
        }

        // Lattice completeness: global extremes and all binary joins/meets.
        let bottom = (0..n)
            .find(|&b| (0..n).all(|p| leq[b][p]))
            .ok_or(Error::LawViolation { law: "lattice.bottom", witness: vec![] })?;
        let top = (0..n)
            .find(|&t| (0..n).all(|p| leq[p][t]))
            .ok_or(Error::LawViolation { law: "lattice.top", witness: vec![] })?;

        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for p in 0..n {
            for q in 0..n {
                join[p][q] = lub(&leq, p, q).ok_or_else(|| violation("lattice.join", &[p, q]))?;
                meet[p][q] = glb(&leq, p, q).ok_or_else(|| violation("lattice.meet", &[p, q]))?;
            }
        }

        // Commutative monoid with the top as unit.
        for p in 0..n {
            for q in 0..n {
                if tensor[p][q] != tensor[q][p] {
                    return Err(violation("tensor.commutative", &[p, q]));
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if tensor[tensor[p][q]][r] != tensor[p][tensor[q][r]] {
                        return Err(violation("tensor.associative", &[p, q, r]));
                    }
                }
            }
        }
        for p in 0..n {
            if tensor[top][p] != p {
                return Err(violation("tensor.unit", &[p]));
            }
        }

        // Join distributivity; the empty join is the bottom.
        for p in 0..n {
            if tensor[p][bottom] != bottom {
                return Err(violation("tensor.distributive", &[p, bottom]));
            }
            for q in 0..n {
                for r in 0..n {
                    if tensor[p][join[q][r]] != join[tensor[p][q]][tensor[p][r]] {
                        return Err(violation("tensor.distributive", &[p, q, r]));
                    }
                }
            }
        }

        // Residuation: p → r = ⋁{q : p & q ≤ r}, then confirm the adjunction
        // p & q ≤ r ⟺ q ≤ p → r.
        let mut res = vec![vec![0; n]; n];
        for p in 0..n {
            for r in 0..n {
                let mut acc = bottom;
                for q in 0..n {
                    if leq[tensor[p][q]][r] {
                        acc = join[acc][q];
                    }
                }
                res[p][r] = acc;
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if leq[tensor[p][q]][r] != leq[q][res[p][r]] {
                        return Err(violation("residuation.adjunction", &[p, q, r]));
                    }
                }
            }
        }

        Ok(Self { labels, leq, tensor, join, meet, res, bottom, top })
    }

    /// Builds one of the stock quantales. Chain kinds model `{0, 1/(n-1),
    /// …, 1}` and need `n ≥ 2`; `n` is ignored for `boolean4`.
    pub fn standard(kind: StandardKind, n: usize) -> Result<Self> {
        match kind {
            StandardKind::Product => Err(Error::UnsupportedKind("product".into())),
            StandardKind::Boolean4 => {
                // 0 < a, b < 1 with a, b incomparable; & is the meet.
                let labels = ["0", "a", "b", "1"].map(String::from).to_vec();
                let below: [&[El]; 4] = [&[0], &[0, 1], &[0, 2], &[0, 1, 2, 3]];
                let leq = (0..4)
                    .map(|p| (0..4).map(|q| below[q].contains(&p)).collect())
                    .collect::<Vec<Vec<bool>>>();
                let meet = |p: El, q: El| -> El {
                    if p == q { p }
                    else if below[q].contains(&p) { p }
                    else if below[p].contains(&q) { q }
                    else { 0 }
                };
                let tensor = (0..4).map(|p| (0..4).map(|q| meet(p, q)).collect()).collect();
                Self::new(labels, leq, tensor)
            }
            chain => {
                if n < 2 {
                    return Err(Error::BadInput(format!(
                        "chain quantales need at least 2 elements, got {n}"
                    )));
                }
                let m = n - 1; // index of the top; element i stands for i/m
                let labels = (0..n).map(|i| fraction_label(i, m)).collect();
                let leq = (0..n).map(|p| (0..n).map(|q| p <= q).collect()).collect();
                let t = |p: usize, q: usize| -> El {
                    match chain {
                        StandardKind::Godel => p.min(q),
                        StandardKind::Lukasiewicz => (p + q).saturating_sub(m),
                        StandardKind::NilpotentMin => {
                            if p + q <= m { 0 } else { p.min(q) }
                        }
                        _ => unreachable!(),
                    }
                };
                let tensor = (0..n).map(|p| (0..n).map(|q| t(p, q)).collect()).collect();
                Self::new(labels, leq, tensor)
            }
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> std::ops::Range<El> {
        0..self.size()
    }

    pub fn label(&self, p: El) -> &str {
        &self.labels[p]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<El> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, p: El, q: El) -> bool {
        self.leq[p][q]
    }

    pub fn tensor(&self, p: El, q: El) -> El {
        self.tensor[p][q]
    }

    pub fn join(&self, p: El, q: El) -> El {
        self.join[p][q]
    }

    pub fn meet(&self, p: El, q: El) -> El {
        self.meet[p][q]
    }

    /// The residual `p → q`, right adjoint to `p & -`.
    pub fn res(&self, p: El, q: El) -> El {
        self.res[p][q]
    }

    /// `¬p = p → 0`.
    pub fn neg(&self, p: El) -> El {
        self.res[p][self.bottom]
    }

    pub fn bottom(&self) -> El {
        self.bottom
    }

    pub fn top(&self) -> El {
        self.top
    }

    /// Join of an arbitrary finite family; empty families give the bottom.
    pub fn join_all<I: IntoIterator<Item = El>>(&self, elems: I) -> El {
        elems.into_iter().fold(self.bottom, |a, b| self.join[a][b])
    }

    /// Meet of an arbitrary finite family; empty families give the top.
    pub fn meet_all<I: IntoIterator<Item = El>>(&self, elems: I) -> El {
        elems.into_iter().fold(self.top, |a, b| self.meet[a][b])
    }

    /// Whether `≤` is a total order.
    pub fn is_linear(&self) -> bool {
        let n = self.size();
        (0..n).all(|p| (0..n).all(|q| self.leq[p][q] || self.leq[q][p]))
    }

    /// The first `p` with `¬¬p ≠ p`, if any.
    pub fn double_negation_witness(&self) -> Option<El> {
        self.elements().find(|&p| self.neg(self.neg(p)) != p)
    }

    /// Whether `¬¬p = p` holds everywhere. When it does, the residual and
    /// tensor can be expressed through negation; those derived identities
    /// are theorems of the axioms, so we assert them rather than report
    /// them.
    pub fn satisfies_double_negation(&self) -> bool {
        if self.double_negation_witness().is_some() {
            return false;
        }
        for p in self.elements() {
            for q in self.elements() {
                let imp = self.res(p, q);
                assert_eq!(imp, self.neg(self.tensor(p, self.neg(q))));
                assert_eq!(imp, self.res(self.neg(q), self.neg(p)));
                let ten = self.tensor(p, q);
                assert_eq!(ten, self.neg(self.res(q, self.neg(p))));
                assert_eq!(ten, self.neg(self.res(p, self.neg(q))));
                assert_eq!(self.neg(self.meet(p, q)), self.join(self.neg(p), self.neg(q)));
            }
        }
        true
    }

    /// Nonzero elements `c` with `c ≤ p ∨ q ⟹ c ≤ p or c ≤ q`, in index
    /// order.
    pub fn coprimes(&self) -> Vec<El> {
        self.elements()
            .filter(|&c| {
                c != self.bottom
                    && self.elements().all(|p| {
                        self.elements().all(|q| {
                            !self.leq[c][self.join[p][q]] || self.leq[c][p] || self.leq[c][q]
                        })
                    })
            })
            .collect()
    }

    /// Whether every element is a join of coprimes.
    pub fn has_enough_coprimes(&self) -> bool {
        let coprimes = self.coprimes();
        self.elements().all(|p| {
            self.join_all(coprimes.iter().copied().filter(|&c| self.leq[c][p])) == p
        })
    }
}

/// Least upper bound of `{p, q}` in the poset given by `leq`, if it exists.
fn lub(leq: &[Vec<bool>], p: El, q: El) -> Option<El> {
    let n = leq.len();
    let uppers: Vec<El> = (0..n).filter(|&u| leq[p][u] && leq[q][u]).collect();
    uppers
        .iter()
        .copied()
        .find(|&u| uppers.iter().all(|&v| leq[u][v]))
}

/// Greatest lower bound of `{p, q}`, if it exists.
fn glb(leq: &[Vec<bool>], p: El, q: El) -> Option<El> {
    let n = leq.len();
    let lowers: Vec<El> = (0..n).filter(|&l| leq[l][p] && leq[l][q]).collect();
    lowers
        .iter()
        .copied()
        .find(|&l| lowers.iter().all(|&v| leq[v][l]))
}

/// Label for the chain element `num/den`, reduced.
fn fraction_label(num: usize, den: usize) -> String {
    if num == 0 {
        "0".to_string()
    } else if num == den {
        "1".to_string()
    } else {
        let g = gcd(num, den);
        format!("{}/{}", num / g, den / g)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

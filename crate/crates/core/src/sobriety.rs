//! Irreducible closed sets, sobriety and sobrification.
//!
//! A closed set `F` is *irreducible* when `⋁F = 1` and
//! `sub(F, A ∨ B) = sub(F, A) ∨ sub(F, B)` for all closed `A`, `B`. A
//! stratified space is *sober* when every irreducible closed set is the
//! closure of exactly one singleton `1_x`.
//!
//! The sobrification `s(X)` has the irreducible closed sets as points and
//! `s(A)(F) = sub(F, A)` as closed sets; the unit `η` sends a point to the
//! closure of its singleton.

use std::sync::Arc;

use serde_json::json;

use crate::cotopology::{self, Cotopology, Mode};
use crate::error::{Error, Result};
use crate::fuzzy::{self, FuzzySet, PointMap, PointSet};
use crate::quantale::{El, Quantale};

/// Whether the closed set `f` is irreducible in `tau`.
pub fn is_irreducible_closed(q: &Quantale, tau: &Cotopology, f: &FuzzySet) -> Result<bool> {
    if !tau.contains(f) {
        return Err(Error::NotClosed);
    }
    Ok(irreducible_unchecked(q, tau, f))
}

fn irreducible_unchecked(q: &Quantale, tau: &Cotopology, f: &FuzzySet) -> bool {
    if f.sup(q) != q.top() {
        return false;
    }
    let closed = tau.closed();
    let subs: Vec<El> = closed
        .iter()
        .map(|a| fuzzy::sub(q, f, a).expect("family shares the space"))
        .collect();
    for (i, a) in closed.iter().enumerate() {
        for (j, b) in closed.iter().enumerate().skip(i) {
            // sub(f, a ∨ b), computed pointwise to avoid allocating.
            let lhs = q.meet_all(
                f.values()
                    .iter()
                    .zip(a.values().iter().zip(b.values()))
                    .map(|(&fv, (&av, &bv))| q.res(fv, q.join(av, bv))),
            );
            if lhs != q.join(subs[i], subs[j]) {
                return false;
            }
        }
    }
    true
}

/// All irreducible closed sets, in canonical family order.
pub fn irreducible_closed_sets(q: &Quantale, tau: &Cotopology) -> Vec<FuzzySet> {
    tau.closed()
        .iter()
        .filter(|f| irreducible_unchecked(q, tau, f))
        .cloned()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sober,
    NotSober,
    /// Sobriety is only defined for stratified spaces.
    NotStratified,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Sober => "sober",
            Verdict::NotSober => "not_sober",
            Verdict::NotStratified => "not_stratified",
        }
    }
}

/// An irreducible closed set that is the closure of `point_count ≠ 1`
/// singletons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoberWitness {
    /// Index into [`SoberReport::irreducibles`].
    pub irreducible: usize,
    pub point_count: usize,
}

/// Everything the sober check finds out about a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoberReport {
    pub space: Arc<PointSet>,
    pub verdict: Verdict,
    /// Irreducible closed sets in canonical order.
    pub irreducibles: Vec<FuzzySet>,
    /// Per point, the index of the irreducible equal to `closure(1_x)`;
    /// `None` when that closure is not irreducible (possible only in
    /// non-stratified spaces).
    pub eta: Vec<Option<usize>>,
    pub witnesses: Vec<SoberWitness>,
}

impl SoberReport {
    pub fn is_sober(&self) -> bool {
        self.verdict == Verdict::Sober
    }

    /// Stable machine-readable form; values are rendered as label tables.
    pub fn to_json(&self, q: &Quantale) -> serde_json::Value {
        json!({
            "verdict": self.verdict.name(),
            "irreducibles": self.irreducibles.iter().map(|f| f.value_labels(q)).collect::<Vec<_>>(),
            "eta": self.space.names().iter().zip(&self.eta).map(|(name, irr)| {
                json!({ "point": name, "irreducible": irr })
            }).collect::<Vec<_>>(),
            "witnesses": self.witnesses.iter().map(|w| {
                json!({ "irreducible": w.irreducible, "point_count": w.point_count })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Decides sobriety. Non-stratified spaces get the `NotStratified`
/// verdict; the irreducibles and singleton closures are still reported.
pub fn is_sober(q: &Quantale, tau: &Cotopology) -> SoberReport {
    let space = Arc::clone(tau.space());
    let stratified = tau.is_stratified(q);
    let irreducibles = irreducible_closed_sets(q, tau);
    let eta: Vec<Option<usize>> = (0..space.len())
        .map(|x| {
            let cl = tau
                .closure(q, &FuzzySet::singleton(&space, x, q))
                .expect("singletons live on the space");
            fuzzy::position(&irreducibles, &cl)
        })
        .collect();
    let mut counts = vec![0usize; irreducibles.len()];
    for e in eta.iter().flatten() {
        counts[*e] += 1;
    }
    let witnesses: Vec<SoberWitness> = counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 1)
        .map(|(irreducible, &point_count)| SoberWitness { irreducible, point_count })
        .collect();
    let verdict = if !stratified {
        Verdict::NotStratified
    } else if witnesses.is_empty() && eta.iter().all(|e| e.is_some()) {
        Verdict::Sober
    } else {
        Verdict::NotSober
    };
    SoberReport { space, verdict, irreducibles, eta, witnesses }
}

/// The sobrification of a stratified space.
#[derive(Debug, Clone)]
pub struct Sobrification {
    /// The space `s(X)`: points are the irreducible closed sets of `X`,
    /// closed sets are `s(A)(F) = sub(F, A)` for `A` closed in `X`.
    pub space: Cotopology,
    /// The unit `η : X → s(X)`, `x ↦ closure(1_x)`.
    pub eta: PointMap,
    /// The irreducible closed sets of `X`, in the order used as points of
    /// `s(X)`.
    pub irreducibles: Vec<FuzzySet>,
}

/// Builds `s(X)` for a stratified `tau`.
pub fn sobrify(q: &Quantale, tau: &Cotopology) -> Result<Sobrification> {
    if !tau.is_stratified(q) {
        return Err(Error::NotStratified);
    }
    let irreducibles = irreducible_closed_sets(q, tau);
    let names = irreducibles
        .iter()
        .map(|f| format!("F({})", f.value_labels(q).join(",")))
        .collect();
    let s_space = PointSet::new(names)?;
    let mut closed = Vec::with_capacity(tau.len());
    for a in tau.closed() {
        closed.push(s_of(q, &s_space, &irreducibles, a));
    }
    // `A ↦ s(A)` is injective on closed sets; a duplicate would silently
    // shrink the family under canonicalization, so insist on it here.
    let before = closed.len();
    let closed = fuzzy::canonicalize(closed);
    assert_eq!(before, closed.len(), "s must be injective on closed sets");
    let space = Cotopology::new(&s_space, closed, Mode::Stratified, q)?;
    let eta_map: Vec<usize> = (0..tau.space().len())
        .map(|x| {
            let cl = tau.closure(q, &FuzzySet::singleton(tau.space(), x, q))?;
            fuzzy::position(&irreducibles, &cl).ok_or(Error::NotStratified)
        })
        .collect::<Result<_>>()?;
    let eta = PointMap::new(tau.space(), &s_space, eta_map)?;
    Ok(Sobrification { space, eta, irreducibles })
}

/// `s(A)` as a fuzzy set on the sobrified point set.
fn s_of(
    q: &Quantale,
    s_space: &Arc<PointSet>,
    irreducibles: &[FuzzySet],
    a: &FuzzySet,
) -> FuzzySet {
    FuzzySet::from_values(
        s_space,
        irreducibles
            .iter()
            .map(|f| fuzzy::sub(q, f, a).expect("family shares the space"))
            .collect(),
    )
}

/// Re-derives the defining identities of `A ↦ s(A)` on a sobrification.
/// Returns the name of the first identity that fails (it never should;
/// this exists so test suites can sweep it over whole corpora).
pub fn verify_sobrification_lemma(
    q: &Quantale,
    tau: &Cotopology,
    sob: &Sobrification,
) -> std::result::Result<(), &'static str> {
    let s_space = sob.space.space();
    let irr = &sob.irreducibles;
    let s = |a: &FuzzySet| s_of(q, s_space, irr, a);
    // Constants map to constants.
    for p in q.elements() {
        if s(&FuzzySet::constant(tau.space(), p)) != FuzzySet::constant(s_space, p) {
            return Err("s(p_X) = p_{s(X)}");
        }
    }
    // Injectivity: the family sizes agree.
    if sob.space.len() != tau.len() {
        return Err("s is injective");
    }
    let closed = tau.closed();
    for a in closed {
        let sa = s(a);
        for b in closed {
            let sb = s(b);
            if s(&fuzzy::join(q, a, b).expect("same space"))
                != fuzzy::join(q, &sa, &sb).expect("same space")
            {
                return Err("s(A ∨ B) = s(A) ∨ s(B)");
            }
            if s(&fuzzy::meet(q, a, b).expect("same space"))
                != fuzzy::meet(q, &sa, &sb).expect("same space")
            {
                return Err("s(A ∧ B) = s(A) ∧ s(B)");
            }
            if fuzzy::sub(q, a, b).expect("same space")
                != fuzzy::sub(q, &sa, &sb).expect("same space")
            {
                return Err("sub(A, B) = sub(s(A), s(B))");
            }
        }
        for p in q.elements() {
            if s(&fuzzy::res_scale(q, p, a)) != fuzzy::res_scale(q, p, &sa) {
                return Err("s(p → A) = p → s(A)");
            }
        }
    }
    // Meets of whole subfamilies reduce to iterated binary meets, but check
    // the full-family meet once as the extreme case.
    let full_meet = |fam: &[FuzzySet], space: &Arc<PointSet>| -> FuzzySet {
        fam.iter().fold(FuzzySet::constant(space, q.top()), |acc, f| {
            fuzzy::meet(q, &acc, f).expect("same space")
        })
    };
    if s(&full_meet(closed, tau.space())) != full_meet(sob.space.closed(), s_space) {
        return Err("s(⋀ A_j) = ⋀ s(A_j)");
    }
    Ok(())
}

/// Extends a continuous `f : X → Y` with sober `Y` to `f* : s(X) → Y`
/// with `f* ∘ η = f`: each irreducible `F` goes to the unique point whose
/// singleton closure equals `closure(f→(F))`.
pub fn extend_to_sobrification(
    q: &Quantale,
    f: &PointMap,
    tx: &Cotopology,
    ty: &Cotopology,
) -> Result<PointMap> {
    if !tx.is_stratified(q) {
        return Err(Error::SourceNotStratified);
    }
    let target_report = is_sober(q, ty);
    if !target_report.is_sober() {
        return Err(Error::TargetNotSober);
    }
    assert!(
        cotopology::is_continuous(f, tx, ty)?,
        "extension requires a continuous map"
    );
    let sob = sobrify(q, tx)?;
    let y_closures: Vec<FuzzySet> = (0..ty.space().len())
        .map(|y| ty.closure(q, &FuzzySet::singleton(ty.space(), y, q)))
        .collect::<Result<_>>()?;
    let mut assignment = Vec::with_capacity(sob.irreducibles.len());
    for fset in &sob.irreducibles {
        let img_closure = ty.closure(q, &fuzzy::image(q, f, fset)?)?;
        let matches: Vec<usize> = (0..y_closures.len())
            .filter(|&y| y_closures[y] == img_closure)
            .collect();
        assert_eq!(
            matches.len(),
            1,
            "a sober target matches each irreducible image closure exactly once"
        );
        assignment.push(matches[0]);
    }
    let ext = PointMap::new(sob.space.space(), ty.space(), assignment)?;
    debug_assert!((0..tx.space().len()).all(|x| ext.apply(sob.eta.apply(x)) == f.apply(x)));
    Ok(ext)
}

/// Irreducible lower sets of the specialization order that have no
/// supremum. Empty on sober input (directed completeness); the input must
/// be sober.
///
/// While enumerating, this also re-checks that the closure of every
/// irreducible lower set of `Ω(X)` is an irreducible closed set.
pub fn check_directed_complete(
    q: &Quantale,
    tau: &Cotopology,
    cap: usize,
) -> Result<Vec<FuzzySet>> {
    assert!(
        is_sober(q, tau).is_sober(),
        "directed completeness is checked on sober spaces"
    );
    let omega = tau.specialization(q);
    let lower = omega.lower_sets(q, cap)?;
    let mut violations = Vec::new();
    for phi in &lower {
        if phi.sup(q) != q.top() {
            continue;
        }
        let irreducible = lower.iter().all(|a| {
            lower.iter().all(|b| {
                let joined = fuzzy::join(q, a, b).expect("same space");
                fuzzy::sub(q, phi, &joined).expect("same space")
                    == q.join(
                        fuzzy::sub(q, phi, a).expect("same space"),
                        fuzzy::sub(q, phi, b).expect("same space"),
                    )
            })
        });
        if !irreducible {
            continue;
        }
        let cl = tau.closure(q, phi)?;
        assert!(
            is_irreducible_closed(q, tau, &cl)?,
            "closures of irreducible lower sets stay irreducible"
        );
        if omega.suprema(q, phi)?.is_empty() {
            violations.push(phi.clone());
        }
    }
    Ok(violations)
}

/// Outcome of testing `Hausdorff ⇒ sober` on one space.
#[derive(Debug, Clone)]
pub struct HausdorffSober {
    pub hausdorff: bool,
    pub sober: SoberReport,
    /// `hausdorff → sober`; vacuously true for non-Hausdorff spaces.
    pub holds: bool,
}

/// Checks the implication `Hausdorff ⇒ sober` for a stratified space over
/// a *linear* quantale; refuses non-linear quantales, where the
/// implication is known to fail.
pub fn hausdorff_implies_sober_check(
    q: &Quantale,
    tau: &Cotopology,
    cap: usize,
) -> Result<HausdorffSober> {
    if !q.is_linear() {
        return Err(Error::NonLinearQuantale);
    }
    if !tau.is_stratified(q) {
        return Err(Error::NotStratified);
    }
    let hausdorff = tau.is_hausdorff(q, cap)?;
    let sober = is_sober(q, tau);
    let holds = !hausdorff || sober.is_sober();
    Ok(HausdorffSober { hausdorff, sober, holds })
}

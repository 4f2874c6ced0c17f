//! A deterministic pseudo-random corpus of small spaces.
//!
//! The corpus is the raw material of the property sweeps: quantales from
//! the stock builders, point sets of bounded size, random small subbases
//! and a mode drawn with a bias towards stratified (the sobriety theory
//! only applies there). Identical parameters produce an identical corpus,
//! bit for bit — the generator is a seeded ChaCha stream and every
//! downstream structure is canonically ordered.

use std::sync::Arc;

use qsober_core::cotopology::{Cotopology, Mode};
use qsober_core::error::Result;
use qsober_core::fuzzy::{self, FuzzySet, PointSet};
use qsober_core::sobriety;
use qsober_core::{Quantale, StandardKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Debug, Clone, Copy)]
pub struct CorpusParams {
    pub seed: u64,
    pub count: usize,
    pub max_q: usize,
    pub max_x: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { seed: 0, count: 60, max_q: 4, max_x: 3 }
    }
}

#[derive(Debug, Clone)]
pub struct Member {
    pub name: String,
    pub quantale_name: String,
    pub quantale: Quantale,
    pub space: Arc<PointSet>,
    pub subbasis: Vec<FuzzySet>,
    pub mode: Mode,
    pub tau: Cotopology,
}

impl Member {
    pub fn describe(&self) -> serde_json::Value {
        let subbasis: Vec<Vec<String>> =
            self.subbasis.iter().map(|a| a.value_labels(&self.quantale)).collect();
        json!({
            "name": self.name,
            "quantale": self.quantale_name,
            "points": self.space.names(),
            "subbasis": subbasis,
            "mode": self.mode.name(),
            "derived_mode": self.tau.derived_mode(&self.quantale).name(),
            "family_size": self.tau.len(),
        })
    }
}

fn quantale_pool(max_q: usize) -> Vec<(String, Quantale)> {
    let mut pool = Vec::new();
    for kind in [StandardKind::Godel, StandardKind::Lukasiewicz, StandardKind::NilpotentMin] {
        for n in 2..=max_q.max(2) {
            pool.push((
                format!("{}{}", kind.name(), n),
                Quantale::standard(kind, n).unwrap(),
            ));
        }
    }
    if max_q >= 4 {
        pool.push(("boolean4".to_string(), Quantale::standard(StandardKind::Boolean4, 0).unwrap()));
    }
    pool
}

/// Builds the corpus. Deterministic: the ChaCha stream is consumed in a
/// fixed order (quantale, size, subbasis count, values, mode) per member.
pub fn build(params: &CorpusParams, cotopology_cap: usize) -> Result<Vec<Member>> {
    let pool = quantale_pool(params.max_q);
    let names = ["x", "y", "z", "w"];
    let max_x = params.max_x.min(names.len());
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut members = Vec::with_capacity(params.count);
    for i in 0..params.count {
        let (quantale_name, q) = &pool[rng.random_range(0..pool.len())];
        let nx = rng.random_range(1..=max_x);
        let space = PointSet::new(names[..nx].iter().map(|s| s.to_string()).collect())?;
        let subbasis_len = rng.random_range(0..=2);
        let subbasis: Vec<FuzzySet> = (0..subbasis_len)
            .map(|_| {
                let values = (0..nx).map(|_| rng.random_range(0..q.size())).collect();
                FuzzySet::new(&space, values, q)
            })
            .collect::<Result<_>>()?;
        let mode = [Mode::Plain, Mode::Stratified, Mode::Stratified, Mode::Costratified, Mode::Strong]
            [rng.random_range(0..5)];
        let tau = Cotopology::generate(q, &space, &subbasis, mode, cotopology_cap)?;
        members.push(Member {
            name: format!("m{i:02}-{quantale_name}-x{nx}-{}", mode.name()),
            quantale_name: quantale_name.clone(),
            quantale: q.clone(),
            space,
            subbasis,
            mode,
            tau,
        });
    }
    Ok(members)
}

/// Exhaustively checks the closure laws on one space: cl1 on constants,
/// cl2 (extensive), cl3 (binary joins), cl4 (idempotent) over all of
/// `Q^X`, and — on stratified spaces — `sub(A,B) = sub(Ā,B)` for closed
/// `B`. Returns the number of closure evaluations.
pub fn check_closure_laws(member: &Member, enum_cap: usize) -> Result<usize> {
    let q = &member.quantale;
    let tau = &member.tau;
    let all = fuzzy::enumerate(q, tau.space(), enum_cap)?;
    let closures: Vec<FuzzySet> =
        all.iter().map(|a| tau.closure(q, a)).collect::<Result<_>>()?;
    let stratified = tau.is_stratified(q);
    let mut checks = 0usize;
    for p in q.elements() {
        let c = FuzzySet::constant(tau.space(), p);
        assert_eq!(tau.closure(q, &c)?, c, "cl1 failed on {}", member.name);
        checks += 1;
    }
    for (a, cl) in all.iter().zip(&closures) {
        assert!(a.leq(cl, q)?, "cl2 failed on {}", member.name);
        assert_eq!(&tau.closure(q, cl)?, cl, "cl4 failed on {}", member.name);
        checks += 2;
        if stratified {
            for b in tau.closed() {
                assert_eq!(
                    fuzzy::sub(q, a, b)?,
                    fuzzy::sub(q, cl, b)?,
                    "closed-support failed on {}",
                    member.name
                );
                checks += 1;
            }
        }
    }
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            let join = fuzzy::join(q, a, b)?;
            assert_eq!(
                tau.closure(q, &join)?,
                fuzzy::join(q, &closures[i], &closures[j])?,
                "cl3 failed on {}",
                member.name
            );
            checks += 1;
        }
    }
    Ok(checks)
}

/// On stratified members: sobrify, require the result to be sober, verify
/// the structural identities of `s(−)` and continuity of the unit; on
/// sober members additionally require the unit to be a homeomorphism.
/// Returns `true` when the member was stratified (and therefore checked).
pub fn check_sobrification(member: &Member) -> Result<bool> {
    let q = &member.quantale;
    let tau = &member.tau;
    if !tau.is_stratified(q) {
        return Ok(false);
    }
    let sob = sobriety::sobrify(q, tau)?;
    assert!(
        sobriety::is_sober(q, &sob.space).is_sober(),
        "sobrification of {} is not sober",
        member.name
    );
    sobriety::verify_sobrification_lemma(q, tau, &sob)
        .unwrap_or_else(|law| panic!("`{law}` failed on {}", member.name));
    assert!(
        qsober_core::cotopology::is_continuous(&sob.eta, tau, &sob.space)?,
        "unit map of {} is not continuous",
        member.name
    );
    if sobriety::is_sober(q, tau).is_sober() {
        // Sober: the unit is a bijection matching the closed families in
        // both directions.
        assert_eq!(sob.space.space().len(), tau.space().len());
        let mut seen = vec![false; sob.space.space().len()];
        for x in 0..tau.space().len() {
            seen[sob.eta.apply(x)] = true;
        }
        assert!(seen.iter().all(|&s| s), "unit map of {} is not onto", member.name);
        for a in tau.closed() {
            let image = fuzzy::image(q, &sob.eta, a)?;
            assert!(sob.space.contains(&image), "unit image of a closed set escapes s({})", member.name);
        }
        for s_a in sob.space.closed() {
            let pre = fuzzy::preimage(&sob.eta, s_a)?;
            assert!(tau.contains(&pre), "unit preimage of a closed set escapes {}", member.name);
        }
    }
    Ok(true)
}

//! Named scenarios with reviewed expected outcomes.
//!
//! Each scenario builds a small instance from the registry (a JSON
//! document compiled into the binary), computes a deterministic result
//! document, and compares it field by field against the registry's
//! `expect` block. The `basis` field records where an expected value
//! comes from: `"noted"` for outcomes worked out in the literature,
//! `"direct"` for immediate consequences of the definitions, and
//! `"computed"` for values frozen from an engine run and cross-checked by
//! the exhaustive test suites.

use qsober_core::duality::{self, TopMode};
use qsober_core::error::{Error, Result};
use qsober_core::formats::{CotopologyFile, CrispFile, QuantaleFile};
use qsober_core::fuzzy::{FuzzySet, PointSet};
use qsober_core::sobriety;
use qsober_core::Quantale;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::Caps;

#[derive(Debug, Deserialize)]
pub struct Registry {
    pub scenarios: Vec<Scenario>,
}

#[derive(Debug, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    /// Where the expected values come from: noted | direct | computed.
    pub basis: String,
    /// What to compute: sober | lowen | hausdorff-sober | dualize | chain-id.
    pub kind: String,
    pub quantale: QuantaleFile,
    #[serde(default)]
    pub space: Option<CotopologyFile>,
    #[serde(default)]
    pub crisp: Option<CrispFile>,
    pub expect: Map<String, Value>,
}

/// The compiled-in registry.
pub fn registry() -> Registry {
    serde_json::from_str(include_str!("scenarios.json"))
        .expect("the embedded scenario registry parses")
}

pub fn find<'a>(registry: &'a Registry, name: &str) -> Result<&'a Scenario> {
    registry
        .scenarios
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::BadInput(format!("unknown scenario `{name}`")))
}

impl Scenario {
    fn space(&self, q: &Quantale, caps: &Caps) -> Result<qsober_core::cotopology::Cotopology> {
        self.space
            .as_ref()
            .ok_or_else(|| Error::BadInput(format!("scenario `{}` lacks a space", self.name)))?
            .resolve(q, caps.cotopology)
    }

    /// Computes the result document for this scenario.
    pub fn compute(&self, caps: &Caps) -> Result<Value> {
        let q = self.quantale.clone().into_quantale()?;
        match self.kind.as_str() {
            "sober" => {
                let tau = self.space(&q, caps)?;
                let report = sobriety::is_sober(&q, &tau);
                let mut out = report
                    .to_json(&q)
                    .as_object()
                    .expect("sober reports are objects")
                    .clone();
                out.insert("family_size".into(), json!(tau.len()));
                out.insert("mode".into(), json!(tau.mode().name()));
                out.insert("derived_mode".into(), json!(tau.derived_mode(&q).name()));
                let stratified = tau.is_stratified(&q);
                out.insert("stratified".into(), json!(stratified));
                out.insert(
                    "hausdorff".into(),
                    json!(tau.is_hausdorff(&q, caps.enumeration)?),
                );
                out.insert("irreducible_count".into(), json!(report.irreducibles.len()));
                if stratified {
                    let sob = sobriety::sobrify(&q, &tau)?;
                    sobriety::verify_sobrification_lemma(&q, &tau, &sob)
                        .map_err(|law| Error::BadInput(format!("`{law}` failed")))?;
                    out.insert("s_points".into(), json!(sob.space.space().len()));
                    out.insert(
                        "s_sober".into(),
                        json!(sobriety::is_sober(&q, &sob.space).is_sober()),
                    );
                }
                Ok(Value::Object(out))
            }
            "lowen" => {
                let crisp = self
                    .crisp
                    .as_ref()
                    .ok_or_else(|| {
                        Error::BadInput(format!("scenario `{}` lacks a crisp space", self.name))
                    })?
                    .resolve()?;
                let crisp_report = crisp.is_sober();
                let scale = duality::lowen(&q, &crisp, caps.enumeration)?;
                let scale_report = sobriety::is_sober(&q, &scale);
                let good = match duality::good_extension_check(&q, &crisp, caps.enumeration) {
                    Ok(g) => json!(if g.holds { "holds" } else { "fails" }),
                    Err(e) => json!(format!("refused: {e}")),
                };
                let irreducibles: Vec<String> = crisp_report
                    .irreducibles
                    .iter()
                    .map(|&m| crisp.mask_label(m))
                    .collect();
                Ok(json!({
                    "crisp_sober": crisp_report.sober,
                    "crisp_irreducibles": irreducibles,
                    "scale_family": scale.len(),
                    "scale_verdict": scale_report.verdict.name(),
                    "good_extension": good,
                }))
            }
            "hausdorff-sober" => {
                let tau = self.space(&q, caps)?;
                match sobriety::hausdorff_implies_sober_check(&q, &tau, caps.enumeration) {
                    Ok(r) => Ok(json!({
                        "hausdorff": r.hausdorff,
                        "sober": r.sober.is_sober(),
                        "holds": r.holds,
                    })),
                    Err(e) => Ok(json!({ "result": format!("refused: {e}") })),
                }
            }
            "dualize" => {
                let tau = self.space(&q, caps)?;
                match duality::negate_cotopology(&q, &tau) {
                    Ok(topo) => {
                        let back = duality::negate_topology(&q, &topo)?;
                        Ok(json!({
                            "opens": topo.len(),
                            "mode": topo.mode().name(),
                            "involution": back.closed() == tau.closed(),
                            "stratified": topo.mode() == TopMode::Stratified,
                        }))
                    }
                    Err(e) => Ok(json!({ "result": format!("refused: {e}") })),
                }
            }
            "chain-id" => {
                let carrier = PointSet::new(q.labels().to_vec())?;
                let id = FuzzySet::new(&carrier, q.elements().collect(), &q)?;
                let tau = qsober_core::cotopology::Cotopology::generate(
                    &q,
                    &carrier,
                    &[id.clone()],
                    qsober_core::cotopology::Mode::Stratified,
                    caps.cotopology,
                )?;
                let report = sobriety::is_sober(&q, &tau);
                // Every irreducible should be the closure of a scaled
                // copy p → id of the generator; record whether that holds.
                let mut scaled_closures = Vec::new();
                for p in q.elements() {
                    let scaled = qsober_core::fuzzy::res_scale(&q, p, &id);
                    scaled_closures.push(tau.closure(&q, &scaled)?);
                }
                let from_scalings = report
                    .irreducibles
                    .iter()
                    .all(|f| scaled_closures.contains(f));
                Ok(json!({
                    "carrier": q.labels(),
                    "family_size": tau.len(),
                    "verdict": report.verdict.name(),
                    "irreducible_count": report.irreducibles.len(),
                    "irreducibles_are_scaled_id_closures": from_scalings,
                    "exploratory": true,
                }))
            }
            other => Err(Error::BadInput(format!("unknown scenario kind `{other}`"))),
        }
    }

    /// Runs the scenario and assembles the report document. The boolean
    /// is `true` when every expected field matched.
    pub fn run(&self, caps: &Caps) -> Result<(Value, bool)> {
        let computed = self.compute(caps)?;
        let computed_map = computed.as_object().expect("scenario results are objects");
        let mut mismatches = Vec::new();
        for (key, expected) in &self.expect {
            match computed_map.get(key) {
                Some(actual) if actual == expected => {}
                Some(actual) => mismatches.push(json!({
                    "field": key,
                    "expected": expected,
                    "actual": actual,
                })),
                None => mismatches.push(json!({
                    "field": key,
                    "expected": expected,
                    "actual": Value::Null,
                })),
            }
        }
        let ok = mismatches.is_empty();
        let doc = json!({
            "name": self.name,
            "description": self.description,
            "basis": self.basis,
            "computed": computed,
            "expected": Value::Object(self.expect.clone()),
            "mismatches": mismatches,
            "status": if ok { "ok" } else { "mismatch" },
        });
        Ok((doc, ok))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_parses_and_names_are_unique() {
        let reg = registry();
        assert!(reg.scenarios.len() >= 8);
        let mut names: Vec<&str> = reg.scenarios.iter().map(|s| s.name.as_str()).collect();
        names.sort_unstable();
        let before = names.len();
        names.dedup();
        assert_eq!(before, names.len());
        for s in &reg.scenarios {
            assert!(matches!(s.basis.as_str(), "noted" | "direct" | "computed"));
            assert!(!s.expect.is_empty(), "scenario `{}` expects nothing", s.name);
        }
    }

    #[test]
    fn every_scenario_passes_with_default_caps() {
        let caps = Caps::default();
        for s in registry().scenarios {
            let (doc, ok) = s.run(&caps).unwrap();
            assert!(ok, "scenario `{}` mismatched: {doc}", s.name);
        }
    }

    #[test]
    fn scenario_reports_are_byte_stable() {
        let caps = Caps::default();
        let reg = registry();
        let s = find(&reg, "boolean4-discrete-not-sober").unwrap();
        let (a, _) = s.run(&caps).unwrap();
        let (b, _) = s.run(&caps).unwrap();
        assert_eq!(
            serde_json::to_string_pretty(&a).unwrap(),
            serde_json::to_string_pretty(&b).unwrap()
        );
    }
}

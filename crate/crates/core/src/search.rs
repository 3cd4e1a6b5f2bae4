//! End-to-end search: pairs, components, primitive idempotents, codes.

use std::sync::Arc;

use serde::Serialize;

use crate::codes::{code_from_idempotent, CodeError, CodeProvenance, DistanceMethod, LinearCode};
use crate::field::{FieldCtx, Fq};
use crate::group::Group;
use crate::idempotents::{
    normal_element_classes, primitive_idempotents_nilpotent, primitive_idempotents_with_normal_element, PrimSet,
    Provenance,
};
use crate::shoda::{self, ComponentInfo, ShodaError, StrongShodaPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// One pair per component, one construction per component.
    AllComponents,
    /// Every strong Shoda pair, every applicable construction.
    AllIdempotents,
}

/// Normal elements tried per component by default.
pub const DEFAULT_NORMAL_ELEMENTS: usize = 16;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub strategy: Strategy,
    pub budget: u64,
    pub subgroup_bound: usize,
    pub method: DistanceMethod,
    /// Normal elements tried per trivial-twisting component, in canonical
    /// order up to center scalars. Sets with an already reported code
    /// profile are dropped.
    pub normal_elements: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            strategy: Strategy::AllComponents,
            budget: crate::codes::DEFAULT_BUDGET,
            subgroup_bound: crate::group::DEFAULT_SUBGROUP_BOUND,
            method: DistanceMethod::Gray,
            normal_elements: DEFAULT_NORMAL_ELEMENTS,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    /// Exact minimum distance; absent when the budget was exceeded.
    pub d: Option<usize>,
    /// Upper bound on `d` reported when enumeration was skipped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_upper_bound: Option<usize>,
    pub weights: Option<Vec<u64>>,
    pub idempotent_index: usize,
    pub provenance: String,
    /// Generator matrix in the export format.
    #[serde(skip)]
    pub generator: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ComponentReport {
    pub pair: String,
    pub class: Vec<u64>,
    pub matrix_size: usize,
    pub field_order: u64,
    pub dim: usize,
    pub method: String,
    /// Normal element of the crossed construction, as its integer encoding.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_element: Option<u32>,
    pub codes: Vec<CodeReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Skipped {
    pub pair: String,
    pub class: Vec<u64>,
    pub dim: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub group: String,
    pub order: usize,
    pub ordering_hash: String,
    pub field: String,
    pub strategy: Strategy,
    pub components: Vec<ComponentReport>,
    pub skipped: Vec<Skipped>,
    /// Wall time in milliseconds; informational only.
    pub timing_ms: Option<u64>,
}

impl SearchReport {
    pub fn codes(&self) -> impl Iterator<Item = &CodeReport> {
        self.components.iter().flat_map(|c| c.codes.iter())
    }

    /// True when some `[n, k, d]` with exact `d` occurs.
    pub fn has_code(&self, n: usize, k: usize, d: usize) -> bool {
        self.codes().any(|c| c.n == n && c.k == k && c.d == Some(d))
    }

    /// Best exact distance for each dimension, by increasing `k`.
    pub fn best_by_dimension(&self) -> Vec<(usize, usize)> {
        let mut best: std::collections::BTreeMap<usize, usize> = Default::default();
        for c in self.codes() {
            if let Some(d) = c.d {
                let e = best.entry(c.k).or_insert(d);
                *e = (*e).max(d);
            }
        }
        best.into_iter().collect()
    }

    /// JSON without the timing field.
    pub fn to_json(&self) -> String {
        let mut copy = self.clone();
        copy.timing_ms = None;
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }
}

pub fn provenance_label(p: &Provenance) -> String {
    match p {
        Provenance::Crossed { transversal, power } => format!("crossed(r={transversal},i={power})"),
        Provenance::Nilpotent { t_odd, t_two, t_e } => {
            format!("nilpotent(t_odd={t_odd},t_two={t_two},t_e={t_e})")
        }
    }
}

fn method_label(set: &PrimSet) -> String {
    match set.method {
        crate::idempotents::Method::Crossed => "crossed".into(),
        crate::idempotents::Method::Nilpotent => match set.notes.first() {
            Some(note) => format!("nilpotent ({note})"),
            None => "nilpotent".into(),
        },
    }
}

/// The codes of every idempotent of a primitive set.
pub fn codes_of_set(
    g: &Arc<Group>,
    group_label: &str,
    comp: &ComponentInfo,
    set: &PrimSet,
    normal_element: Option<Fq>,
    field: &FieldCtx,
    opts: &SearchOptions,
) -> ComponentReport {
    let mut codes = Vec::new();
    let mut failures = Vec::new();
    for (i, (e, prov)) in set.idems.iter().zip(&set.provenance).enumerate() {
        let mut code = match code_from_idempotent(g, e, field) {
            Ok(c) => c,
            Err(err) => {
                failures.push(format!("idempotent {i}: {err}"));
                continue;
            }
        };
        code.provenance = Some(CodeProvenance {
            group: group_label.to_string(),
            ordering_hash: g.ordering_hash(),
            pair: comp.pair.label(),
            class: comp.class.residues().to_vec(),
            idempotent_index: i,
        });
        codes.push(code_report(&code, i, provenance_label(prov), opts));
    }
    codes.sort_by(|a, b| {
        a.k.cmp(&b.k)
            .then(b.d.cmp(&a.d))
            .then(a.idempotent_index.cmp(&b.idempotent_index))
    });
    ComponentReport {
        pair: comp.pair.label(),
        class: comp.class.residues().to_vec(),
        matrix_size: comp.matrix_size,
        field_order: comp.field_order,
        dim: comp.dim,
        method: method_label(set),
        normal_element: normal_element.map(|w| w.0),
        codes,
        failures,
    }
}

fn code_report(code: &LinearCode, index: usize, provenance: String, opts: &SearchOptions) -> CodeReport {
    let (d, d_upper_bound, weights) = match code.weight_distribution(opts.method, opts.budget) {
        Ok(w) => (Some(crate::codes::distance_from_weights(&w)), None, Some(w)),
        Err(CodeError::BudgetExceeded { upper_bound, .. }) => (None, Some(upper_bound), None),
        Err(CodeError::CoefficientsNotInBaseField) => unreachable!("checked at construction"),
    };
    CodeReport {
        n: code.length(),
        k: code.dimension(),
        d,
        d_upper_bound,
        weights,
        idempotent_index: index,
        provenance,
        generator: code.export_text(),
    }
}

fn component_sets(
    g: &Arc<Group>,
    comp: &ComponentInfo,
    field: &FieldCtx,
    opts: &SearchOptions,
) -> (Vec<(PrimSet, Option<Fq>)>, Vec<String>) {
    let mut sets = Vec::new();
    let mut reasons = Vec::new();
    if comp.twisting.is_trivial() {
        let ws = normal_element_classes(comp, field).map_err(|e| e.to_string());
        match ws {
            Ok(ws) => {
                for w in ws.into_iter().take(opts.normal_elements.max(1)) {
                    match primitive_idempotents_with_normal_element(g, comp, field, w) {
                        Ok(s) => sets.push((s, Some(w))),
                        Err(e) => reasons.push(format!("crossed construction failed: {e}")),
                    }
                }
            }
            Err(e) => reasons.push(format!("crossed construction failed: {e}")),
        }
    } else {
        reasons.push("nontrivial twisting".into());
    }
    let want_nilpotent = match opts.strategy {
        Strategy::AllComponents => sets.is_empty(),
        Strategy::AllIdempotents => true,
    };
    if want_nilpotent {
        if g.is_nilpotent() {
            match primitive_idempotents_nilpotent(g, comp, field) {
                Ok(s) => sets.push((s, None)),
                Err(e) => reasons.push(format!("nilpotent construction failed: {e}")),
            }
        } else if sets.is_empty() {
            reasons.push("group is not nilpotent".into());
        }
    }
    (sets, reasons)
}

fn pairs_for(
    g: &Arc<Group>,
    field: &FieldCtx,
    opts: &SearchOptions,
) -> Result<Vec<(Arc<StrongShodaPair>, Vec<ComponentInfo>)>, ShodaError> {
    match opts.strategy {
        Strategy::AllComponents => shoda::strong_shoda_pairs(g, field, opts.subgroup_bound),
        Strategy::AllIdempotents => shoda::all_strong_shoda_pairs(g, opts.subgroup_bound)?
            .into_iter()
            .map(|p| {
                let p = Arc::new(p);
                shoda::components_of_pair(g, &p, field).map(|c| (p, c))
            })
            .collect(),
    }
}

/// Runs the pipeline and reports every code found. Per-component failures
/// are collected in the report; only pair enumeration errors abort.
pub fn code_search(
    g: &Arc<Group>,
    group_label: &str,
    field: &FieldCtx,
    opts: &SearchOptions,
) -> Result<SearchReport, ShodaError> {
    let start = std::time::Instant::now();
    let pairs = pairs_for(g, field, opts)?;
    let mut components = Vec::new();
    let mut skipped = Vec::new();
    for (_, comps) in &pairs {
        for comp in comps {
            let (sets, reasons) = component_sets(g, comp, field, opts);
            if sets.is_empty() {
                skipped.push(Skipped {
                    pair: comp.pair.label(),
                    class: comp.class.residues().to_vec(),
                    dim: comp.dim,
                    reason: reasons.join("; "),
                });
            }
            let mut profiles = std::collections::HashSet::new();
            for (set, w) in &sets {
                let report = codes_of_set(g, group_label, comp, set, *w, field, opts);
                let profile: Vec<_> = report.codes.iter().map(|c| (c.k, c.d, c.weights.clone())).collect();
                if profiles.insert((report.method.clone(), profile)) {
                    components.push(report);
                }
            }
        }
    }
    Ok(SearchReport {
        group: group_label.to_string(),
        order: g.order(),
        ordering_hash: g.ordering_hash(),
        field: field.name(),
        strategy: opts.strategy,
        components,
        skipped,
        timing_ms: Some(start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_21_over_f2() {
        let g = Arc::new(Group::metacyclic(7, 3, 2).unwrap());
        let f = FieldCtx::prime(2).unwrap();
        let r = code_search(&g, "metacyclic(7,3,2)", &f, &SearchOptions::default()).unwrap();
        assert!(r.skipped.is_empty());
        assert!(r.has_code(21, 3, 12), "{:?}", r.best_by_dimension());
        for c in &r.components {
            assert_eq!(c.codes.len(), c.matrix_size);
            assert!(c.codes.iter().all(|x| x.weights.as_ref().unwrap().iter().sum::<u64>() == 1 << x.k));
        }
    }

    #[test]
    fn q8_over_f3_uses_nilpotent_construction() {
        let g = Arc::new(Group::dicyclic(2).unwrap());
        let f = FieldCtx::prime(3).unwrap();
        let r = code_search(&g, "q8", &f, &SearchOptions::default()).unwrap();
        assert!(r.has_code(8, 2, 6), "{:?}", r.best_by_dimension());
        assert!(r.components.iter().any(|c| c.method.starts_with("nilpotent")));
    }

    #[test]
    fn every_component_is_covered_or_skipped() {
        let g = Arc::new(Group::dicyclic(3).unwrap());
        let f = FieldCtx::prime(5).unwrap();
        let r = code_search(&g, "dicyclic(3)", &f, &SearchOptions::default()).unwrap();
        for s in &r.skipped {
            assert!(s.reason.contains("nontrivial twisting"), "{}", s.reason);
        }
        let covered: usize = r.components.iter().map(|c| c.dim).sum();
        let skipped: usize = r.skipped.iter().map(|c| c.dim).sum();
        assert_eq!(covered + skipped, 12);
    }
}

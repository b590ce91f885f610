//! One function per verb: run the engine pipeline and shape the report.

use std::collections::BTreeSet;

use anyhow::{anyhow, Result};
use serde_json::{json, Map, Value};

use gerbedual::rational::to_i64_pair;
use gerbedual::repcat::character_table;
use gerbedual::{
    compute_twist, dual_space, extension_cocycle, induce_plain, reconstruct_hom, ring_homs,
    two_point_example, verify_gerbe_side, verify_twist_cocycle, CycloElement, FunctorDatum,
    GroupExtension, RefinedCocycleDatum,
};

use crate::input::{
    self, AffineInput, AUT_BOUND_VAR, DEFAULT_AUT_BOUND, DEFAULT_RING_BOUND, RING_BOUND_VAR,
};
use crate::report::{violations_json, Report, Status};

fn cyclo_json(value: &CycloElement) -> Result<Value> {
    let coeffs = value
        .coeffs()
        .iter()
        .map(|q| {
            let (num, den) = to_i64_pair(q)
                .ok_or_else(|| anyhow!("cyclotomic coefficient exceeds the 64-bit wire range"))?;
            Ok(json!([num, den]))
        })
        .collect::<Result<Vec<Value>>>()?;
    Ok(json!({"order": value.order(), "coeffs": coeffs}))
}

pub fn chartable(value: &Value) -> Result<Report> {
    let group = input::parse_group(value)?;
    let table = character_table(&group).map_err(|e| anyhow!("character table: {e}"))?;
    let classes = table.classes();
    let class_list: Vec<Value> = classes
        .representatives()
        .iter()
        .zip(classes.sizes())
        .enumerate()
        .map(|(idx, (&rep, size))| {
            json!({
                "representative": rep,
                "size": size,
                "members": classes.members(idx),
            })
        })
        .collect();
    let values = (0..table.count())
        .map(|row| {
            table
                .row(row)
                .iter()
                .map(cyclo_json)
                .collect::<Result<Vec<Value>>>()
                .map(Value::Array)
        })
        .collect::<Result<Vec<Value>>>()?;
    let payload = json!({
        "order": group.order(),
        "exponent": table.exponent(),
        "class_count": classes.count(),
        "classes": class_list,
        "degrees": table.degrees(),
        "values": values,
        "violations": [],
    });
    let summary = vec![
        format!(
            "order {}, {} classes, exponent {}",
            group.order(),
            classes.count(),
            table.exponent()
        ),
        format!("degrees {:?}", table.degrees()),
    ];
    Ok(Report {
        verb: "chartable",
        status: Status::Pass,
        payload,
        dixon_prime: Some(table.prime()),
        summary,
    })
}

pub fn auts(value: &Value) -> Result<Report> {
    let group = input::parse_group(value)?;
    let bound = input::env_bound(AUT_BOUND_VAR, DEFAULT_AUT_BOUND)?;
    let automorphisms = group
        .automorphism_group(bound)
        .map_err(|e| anyhow!("automorphism search: {e}"))?;
    let images: Vec<Value> = automorphisms.iter().map(|a| json!(a.image())).collect();
    let payload = json!({
        "order": group.order(),
        "bound": bound,
        "count": automorphisms.len(),
        "automorphisms": images,
        "violations": [],
    });
    let summary = vec![format!(
        "{} automorphisms of a group of order {} (bound {})",
        automorphisms.len(),
        group.order(),
        bound
    )];
    Ok(Report {
        verb: "auts",
        status: Status::Pass,
        payload,
        dixon_prime: None,
        summary,
    })
}

fn refined_json(refined: &RefinedCocycleDatum) -> (Value, Vec<Vec<usize>>) {
    let q = refined.quotient().order();
    let alpha: Vec<Value> = (0..q).map(|r| json!(refined.alpha(r).image())).collect();
    let beta: Vec<Vec<usize>> = (0..q)
        .map(|r| (0..q).map(|s| refined.beta(r, s)).collect())
        .collect();
    (Value::Array(alpha), beta)
}

pub fn extension(value: &Value) -> Result<Report> {
    let ext = input::parse_extension(value)?;
    let refined = extension_cocycle(&ext).map_err(|e| anyhow!("refined datum: {e}"))?;
    let verification = refined.verify();
    let kernel_order = ext.kernel_group().order();
    let q = ext.quotient().order();
    let quotient_table: Vec<Vec<usize>> = (0..q)
        .map(|a| (0..q).map(|b| ext.quotient().mul(a, b)).collect())
        .collect();
    let section: Vec<usize> = (0..q).map(|r| ext.section(r)).collect();
    let kernel_embedding: Vec<usize> = (0..kernel_order).map(|x| ext.embed(x)).collect();
    let (alpha, beta_rows) = refined_json(&refined);
    let payload = json!({
        "total_order": ext.total().order(),
        "kernel_order": kernel_order,
        "kernel_embedding": kernel_embedding,
        "quotient_order": q,
        "quotient_table": quotient_table,
        "section": section,
        "alpha": alpha,
        "beta": beta_rows,
        "violations": violations_json(&verification.violations),
    });
    let summary = vec![
        format!(
            "kernel order {} x quotient order {} = total order {}",
            kernel_order,
            q,
            ext.total().order()
        ),
        format!("section {:?}", section),
        format!("factor set {:?}", beta_rows),
    ];
    Ok(Report {
        verb: "extension",
        status: Status::from_descent(verification.status),
        payload,
        dixon_prime: None,
        summary,
    })
}

pub fn cocycle_check(value: &Value) -> Result<Report> {
    let datum = input::parse_datum(value)?;
    let verification = datum.verify_cocycle();
    let payload = json!({
        "indices": datum.n_indices(),
        "group_order": datum.group().order(),
        "violations": violations_json(&verification.violations),
    });
    Ok(Report {
        verb: "cocycle-check",
        status: Status::from_descent(verification.status),
        payload,
        dixon_prime: None,
        summary: Vec::new(),
    })
}

pub fn dual(value: &Value) -> Result<Report> {
    let ext = input::parse_extension(value)?;
    let refined = extension_cocycle(&ext).map_err(|e| anyhow!("refined datum: {e}"))?;
    let table =
        character_table(ext.kernel_group()).map_err(|e| anyhow!("character table: {e}"))?;
    let space = dual_space(&refined, &table).map_err(|e| anyhow!("dual space: {e}"))?;
    let orbit_list: Vec<Value> = space
        .orbits
        .iter()
        .zip(&space.stabilizers)
        .map(|(rows, stabilizer)| json!({"rows": rows, "stabilizer": stabilizer}))
        .collect();
    let payload = json!({
        "row_count": table.count(),
        "orbit_count": space.orbits.len(),
        "orbits": orbit_list,
        "transport": space.transport,
        "violations": [],
    });
    let summary = space
        .orbits
        .iter()
        .zip(&space.stabilizers)
        .enumerate()
        .map(|(idx, (rows, stabilizer))| {
            format!("orbit {idx}: rows {rows:?}, stabilizer {stabilizer:?}")
        })
        .collect();
    Ok(Report {
        verb: "dual",
        status: Status::Pass,
        payload,
        dixon_prime: Some(table.prime()),
        summary,
    })
}

/// Index map used to spread a refined datum over a concrete index set: at
/// least four indices so the quadruple checks bite, cycling through the
/// quotient elements.
fn induced_index_map(quotient_order: usize) -> Vec<usize> {
    let n = quotient_order.max(4);
    (0..n).map(|i| i % quotient_order).collect()
}

fn induced_datum(
    ext: &GroupExtension,
) -> Result<(gerbedual::CocycleDatum, Vec<usize>)> {
    let refined = extension_cocycle(ext).map_err(|e| anyhow!("refined datum: {e}"))?;
    let index_map = induced_index_map(ext.quotient().order());
    let datum = induce_plain(&refined, &index_map).map_err(|e| anyhow!("induced datum: {e}"))?;
    Ok((datum, index_map))
}

pub fn twist(value: &Value) -> Result<Report> {
    let ext = input::parse_extension(value)?;
    let (datum, index_map) = induced_datum(&ext)?;
    let table =
        character_table(ext.kernel_group()).map_err(|e| anyhow!("character table: {e}"))?;
    let twist = compute_twist(&datum, &table).map_err(|e| anyhow!("twist: {e}"))?;
    let verification = verify_twist_cocycle(&twist, &datum, &table)
        .map_err(|e| anyhow!("twist verification: {e}"))?;
    let n = datum.n_indices();
    let transport: Vec<Vec<Value>> = (0..n)
        .map(|i| (0..n).map(|j| json!(twist.transport[i * n + j])).collect())
        .collect();
    let mut scalars = Map::new();
    let mut distinct = BTreeSet::new();
    for ((row, i, j, k), scalar) in &twist.scalars {
        let rendered = cyclo_json(scalar)?;
        distinct.insert(rendered.to_string());
        scalars.insert(format!("{row},{i},{j},{k}"), rendered);
    }
    let payload = json!({
        "index_map": index_map,
        "row_count": table.count(),
        "tau_normalization": twist.normalization,
        "transport": transport,
        "scalars": Value::Object(scalars),
        "violations": violations_json(&verification.violations),
    });
    let summary = vec![
        format!("index map {index_map:?}"),
        format!(
            "{} triangle scalars over {} rows, {} distinct values",
            twist.scalars.len(),
            table.count(),
            distinct.len()
        ),
    ];
    Ok(Report {
        verb: "twist",
        status: Status::from_descent(verification.status),
        payload,
        dixon_prime: Some(table.prime()),
        summary,
    })
}

pub fn gerbe_check(value: &Value) -> Result<Report> {
    let ext = input::parse_extension(value)?;
    let (datum, index_map) = induced_datum(&ext)?;
    let verification = verify_gerbe_side(&datum);
    let status = Status::from_descent(verification.status);
    let mut payload = json!({
        "index_map": index_map,
        "indices": datum.n_indices(),
        "group_order": datum.group().order(),
        "violations": violations_json(&verification.violations),
    });
    if status != Status::Fail {
        payload["comparison_twist"] = json!("identity");
    }
    let summary = vec![format!("index map {index_map:?}")];
    Ok(Report {
        verb: "gerbe-check",
        status,
        payload,
        dixon_prime: None,
        summary,
    })
}

pub fn affine_demo(value: &Value) -> Result<Report> {
    match input::parse_affine(value)? {
        AffineInput::TwoPoint { p } => {
            let example = two_point_example(p).map_err(|e| anyhow!("two-point example: {e}"))?;
            let units_differ =
                example.sheaf_unit_vector != example.representation_unit_vector;
            let payload = json!({
                "mode": "two-point",
                "prime": example.prime,
                "ring_order": example.ring.order(),
                "idempotent_plus": {
                    "index": example.idempotent_plus,
                    "coeffs": example.idempotent_plus_coeffs,
                },
                "idempotent_minus": {
                    "index": example.idempotent_minus,
                    "coeffs": example.idempotent_minus_coeffs,
                },
                "product_iso_image": example.product_iso.image(),
                "sheaf_unit_vector": example.sheaf_unit_vector,
                "representation_unit_vector": example.representation_unit_vector,
                "units_differ": units_differ,
                "square_class_count": example.square_class_count,
                "violations": [],
            });
            let summary = vec![
                format!("ring of order {} over F_{}", example.ring.order(), p),
                format!(
                    "idempotents at indices {} and {}",
                    example.idempotent_plus, example.idempotent_minus
                ),
                format!(
                    "unit vectors: module side {:?}, representation side {:?}",
                    example.sheaf_unit_vector, example.representation_unit_vector
                ),
                format!("square classes: {}", example.square_class_count),
            ];
            Ok(Report {
                verb: "affine-demo",
                status: Status::Pass,
                payload,
                dixon_prime: None,
                summary,
            })
        }
        AffineInput::Homs { source, target } => {
            let bound = input::env_bound(RING_BOUND_VAR, DEFAULT_RING_BOUND)?;
            let homs =
                ring_homs(&source, &target, bound).map_err(|e| anyhow!("ring maps: {e}"))?;
            let mut violations = Vec::new();
            for (idx, hom) in homs.iter().enumerate() {
                let datum = FunctorDatum::from_base_change(hom)
                    .map_err(|e| anyhow!("base change of map {idx}: {e}"))?;
                let back = reconstruct_hom(&datum)
                    .map_err(|e| anyhow!("reconstruction of map {idx}: {e}"))?;
                if back.image() != hom.image() {
                    violations.push(json!({
                        "check": "round-trip",
                        "indices": [idx],
                        "detail": format!(
                            "reconstructed image {:?} differs from {:?}",
                            back.image(),
                            hom.image()
                        ),
                    }));
                }
            }
            let status = if violations.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            };
            let images: Vec<Value> = homs.iter().map(|h| json!(h.image())).collect();
            let payload = json!({
                "mode": "ring-maps",
                "source_order": source.order(),
                "target_order": target.order(),
                "bound": bound,
                "count": homs.len(),
                "homs": images,
                "round_trip_identity": violations.is_empty(),
                "violations": violations,
            });
            let summary = vec![
                format!(
                    "{} ring maps from order {} to order {} (bound {})",
                    homs.len(),
                    source.order(),
                    target.order(),
                    bound
                ),
                format!(
                    "round trip through base change: {}",
                    if violations.is_empty() { "identity" } else { "broken" }
                ),
            ];
            Ok(Report {
                verb: "affine-demo",
                status,
                payload,
                dixon_prime: None,
                summary,
            })
        }
    }
}

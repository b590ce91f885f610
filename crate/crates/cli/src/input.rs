//! JSON wire formats for the verbs, validated field by field.
//!
//! Shapes:
//!
//! * group — `{"table": [[..]]}` (full multiplication table) or
//!   `{"degree": d, "generators": [[..]]}` (permutation generators, closed
//!   under products and relabeled in lexicographic order).
//! * extension — `{"total": <group>, "kernel": [indices]}`.
//! * cocycle datum — `{"group": <group>, "indices": n, "alpha": {"i,j":
//!   [perm]}, "beta": {"i,j,k": element}}`; pairs and triples not listed
//!   default to the identity.
//! * affine — `{"p": prime}` for the two-point example, or
//!   `{"source": <ring>, "target": <ring>}` with ring tables
//!   `{"add": [[..]], "mul": [[..]]}` for map enumeration.
//!
//! Every shape tolerates an extra `"name"` field for labeling fixtures.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use gerbedual::{Automorphism, CocycleDatum, FiniteCommRing, FiniteGroup, GroupExtension};

pub const AUT_BOUND_VAR: &str = "GERBEDUAL_AUT_BOUND";
pub const RING_BOUND_VAR: &str = "GERBEDUAL_RING_BOUND";
pub const DEFAULT_AUT_BOUND: usize = 24;
pub const DEFAULT_RING_BOUND: usize = 81;

/// Brute-force bound for one of the search verbs, overridable per run.
pub fn env_bound(name: &str, default: usize) -> Result<usize> {
    match std::env::var(name) {
        Ok(text) => text
            .trim()
            .parse::<usize>()
            .map_err(|_| anyhow!("{name}: expected a positive integer, got {text:?}")),
        Err(std::env::VarError::NotPresent) => Ok(default),
        Err(err) => Err(anyhow!("{name}: {err}")),
    }
}

pub fn load(path: &Path) -> Result<Value> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{}: malformed JSON", path.display()))
}

fn field<'v>(value: &'v Value, name: &str) -> Result<&'v Value> {
    let map = value
        .as_object()
        .ok_or_else(|| anyhow!("expected a JSON object"))?;
    map.get(name)
        .ok_or_else(|| anyhow!("missing field \"{name}\""))
}

fn usize_at(value: &Value, at: &str) -> Result<usize> {
    value
        .as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| anyhow!("field \"{at}\": expected a non-negative integer"))
}

fn usize_list(value: &Value, at: &str) -> Result<Vec<usize>> {
    let items = value
        .as_array()
        .ok_or_else(|| anyhow!("field \"{at}\": expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(idx, item)| {
            item.as_u64()
                .and_then(|n| usize::try_from(n).ok())
                .ok_or_else(|| {
                    anyhow!("field \"{at}\" entry {idx}: expected a non-negative integer")
                })
        })
        .collect()
}

fn usize_rows(value: &Value, at: &str) -> Result<Vec<Vec<usize>>> {
    let rows = value
        .as_array()
        .ok_or_else(|| anyhow!("field \"{at}\": expected an array of rows"))?;
    rows.iter()
        .enumerate()
        .map(|(r, row)| usize_list(row, &format!("{at}[{r}]")))
        .collect()
}

pub fn parse_group(value: &Value) -> Result<FiniteGroup> {
    let map = value
        .as_object()
        .ok_or_else(|| anyhow!("group: expected a JSON object"))?;
    if map.contains_key("table") {
        let rows = usize_rows(field(value, "table")?, "table")?;
        FiniteGroup::from_mult_table(&rows).map_err(|e| anyhow!("field \"table\": {e}"))
    } else if map.contains_key("generators") {
        let degree = usize_at(field(value, "degree")?, "degree")?;
        let generators = usize_rows(field(value, "generators")?, "generators")?;
        FiniteGroup::from_permutations(degree, &generators)
            .map_err(|e| anyhow!("field \"generators\": {e}"))
    } else {
        bail!("group: needs either \"table\" or \"degree\" + \"generators\"")
    }
}

pub fn parse_extension(value: &Value) -> Result<GroupExtension> {
    let total = parse_group(field(value, "total")?).context("field \"total\"")?;
    let kernel = usize_list(field(value, "kernel")?, "kernel")?;
    GroupExtension::from_kernel(total, &kernel).map_err(|e| anyhow!("field \"kernel\": {e}"))
}

fn index_key(key: &str, arity: usize, bound: usize) -> Result<Vec<usize>> {
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != arity {
        bail!("expected {arity} comma-separated indices");
    }
    parts
        .iter()
        .map(|part| {
            let index: usize = part
                .trim()
                .parse()
                .map_err(|_| anyhow!("index {part:?} is not a non-negative integer"))?;
            if index >= bound {
                bail!("index {index} is outside 0..{bound}");
            }
            Ok(index)
        })
        .collect()
}

pub fn parse_datum(value: &Value) -> Result<CocycleDatum> {
    let group = parse_group(field(value, "group")?).context("field \"group\"")?;
    let n = usize_at(field(value, "indices")?, "indices")?;
    if n == 0 {
        bail!("field \"indices\": must be at least 1");
    }
    let mut alpha = vec![Automorphism::identity(group.order()); n * n];
    let mut beta = vec![group.identity(); n * n * n];
    if let Some(entries) = value.get("alpha") {
        let map = entries
            .as_object()
            .ok_or_else(|| anyhow!("field \"alpha\": expected an object"))?;
        for (key, image) in map {
            let at = || format!("field \"alpha\" key \"{key}\"");
            let pair = index_key(key, 2, n).with_context(at)?;
            let perm = usize_list(image, &format!("alpha.{key}"))?;
            let auto =
                Automorphism::new(perm, &group).map_err(|e| anyhow!("{}: {e}", at()))?;
            alpha[pair[0] * n + pair[1]] = auto;
        }
    }
    if let Some(entries) = value.get("beta") {
        let map = entries
            .as_object()
            .ok_or_else(|| anyhow!("field \"beta\": expected an object"))?;
        for (key, element) in map {
            let at = || format!("field \"beta\" key \"{key}\"");
            let triple = index_key(key, 3, n).with_context(at)?;
            let g = element
                .as_u64()
                .and_then(|v| usize::try_from(v).ok())
                .filter(|&v| v < group.order())
                .ok_or_else(|| {
                    anyhow!("{}: expected a group element index below {}", at(), group.order())
                })?;
            beta[(triple[0] * n + triple[1]) * n + triple[2]] = g;
        }
    }
    CocycleDatum::new(group, n, alpha, beta).map_err(|e| anyhow!("cocycle datum: {e}"))
}

pub fn parse_ring(value: &Value) -> Result<FiniteCommRing> {
    let add = usize_rows(field(value, "add")?, "add")?;
    let mul = usize_rows(field(value, "mul")?, "mul")?;
    FiniteCommRing::from_tables(&add, &mul).map_err(|e| anyhow!("ring tables: {e}"))
}

pub enum AffineInput {
    TwoPoint { p: u64 },
    Homs { source: FiniteCommRing, target: FiniteCommRing },
}

pub fn parse_affine(value: &Value) -> Result<AffineInput> {
    let map = value
        .as_object()
        .ok_or_else(|| anyhow!("affine input: expected a JSON object"))?;
    let has_p = map.contains_key("p");
    let has_rings = map.contains_key("source") || map.contains_key("target");
    if has_p && has_rings {
        bail!("affine input: give either \"p\" or \"source\" + \"target\", not both");
    }
    if has_p {
        let p = field(value, "p")?
            .as_u64()
            .ok_or_else(|| anyhow!("field \"p\": expected a positive integer"))?;
        return Ok(AffineInput::TwoPoint { p });
    }
    if map.contains_key("source") && map.contains_key("target") {
        let source = parse_ring(field(value, "source")?).context("field \"source\"")?;
        let target = parse_ring(field(value, "target")?).context("field \"target\"")?;
        return Ok(AffineInput::Homs { source, target });
    }
    bail!("affine input: needs either \"p\" or \"source\" + \"target\"")
}

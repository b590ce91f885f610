//! Gluing data for representation categories over a finite index set.
//!
//! A cocycle datum assigns an automorphism α_ij of a fixed group to every
//! ordered index pair and a group element β_ijk to every ordered triple,
//! subject to two coherence identities:
//!
//! * transition compatibility: α_jk ∘ α_ij = α_ik ∘ ι(β_ijk), where
//!   ι(β)(x) = β⁻¹·x·β;
//! * factor coherence: α_ij⁻¹(β_jkl)·β_ijl = β_ijk·β_ikl.
//!
//! A refined datum carries the same structure indexed by a quotient group:
//! it arises from a group extension via its section, and pulls back to a
//! plain datum along any map of indices into the quotient.  On top of the
//! verification routines this module computes the transport permutation of
//! the irreducible characters, the normalized intertwiners τ between
//! transported duals, the scalar twist class they generate, and the
//! comparison with the regular conjugation action on the group algebra.

use std::collections::BTreeMap;

use crate::cyclo::{CycloElement, CycloError};
use crate::group::{Automorphism, FiniteGroup, GroupError, GroupExtension};
use crate::matrix::{ExactMatrix, MatrixError};
use crate::repcat::{intertwiner_basis, schur_scalar, CharacterTable, RepError, Representation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DescentError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("expected {expected} transition maps for {n} indices, got {got}")]
    AlphaCount { n: usize, expected: usize, got: usize },
    #[error("expected {expected} factor elements for {n} indices, got {got}")]
    BetaCount { n: usize, expected: usize, got: usize },
    #[error("transition map at ({i}, {j}) acts on {got} elements, the group has {expected}")]
    AlphaDegree { i: usize, j: usize, got: usize, expected: usize },
    #[error("factor element at ({i}, {j}, {k}) is {value}, outside the group")]
    BetaOutOfRange { i: usize, j: usize, k: usize, value: usize },
    #[error("index map entry {position} is {value}, outside the quotient")]
    IndexMapOutOfRange { position: usize, value: usize },
    #[error("the index map must be nonempty")]
    EmptyIndexMap,
    #[error("the character table belongs to a different group")]
    WrongGroup,
    #[error("extension data violate {identity} at indices {indices:?}")]
    RefinedViolation {
        identity: &'static str,
        indices: Vec<usize>,
    },
    #[error("transport intertwiner at pair ({i}, {j}), row {row} has dimension {dimension}, expected 1")]
    TauNotUnique {
        i: usize,
        j: usize,
        row: usize,
        dimension: usize,
    },
    #[error("triangle composite at ({i}, {j}, {k}), row {row} is not scalar; the factor element is not central enough to compare")]
    TwistNotScalar {
        row: usize,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error("component fails to intertwine the transported representations")]
    MuNotIntertwining,
    #[error("intertwiner basis element is zero")]
    ZeroIntertwiner,
}

/// Outcome of one verification pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescentStatus {
    Pass,
    Fail,
    Vacuous,
}

/// One named check failure, with the index tuple it happened at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub status: DescentStatus,
    pub violations: Vec<Violation>,
}

impl DescentReport {
    fn conclude(vacuous: bool, violations: Vec<Violation>) -> Self {
        let status = if !violations.is_empty() {
            DescentStatus::Fail
        } else if vacuous {
            DescentStatus::Vacuous
        } else {
            DescentStatus::Pass
        };
        DescentReport { status, violations }
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, DescentStatus::Pass | DescentStatus::Vacuous)
    }
}

/// Transition and factor data over an abstract index set 0..n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleDatum {
    group: FiniteGroup,
    n_indices: usize,
    alpha: Vec<Automorphism>,
    beta: Vec<usize>,
}

impl CocycleDatum {
    pub fn new(
        group: FiniteGroup,
        n_indices: usize,
        alpha: Vec<Automorphism>,
        beta: Vec<usize>,
    ) -> Result<Self, DescentError> {
        let n = n_indices;
        if alpha.len() != n * n {
            return Err(DescentError::AlphaCount {
                n,
                expected: n * n,
                got: alpha.len(),
            });
        }
        if beta.len() != n * n * n {
            return Err(DescentError::BetaCount {
                n,
                expected: n * n * n,
                got: beta.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                if alpha[i * n + j].degree() != group.order() {
                    return Err(DescentError::AlphaDegree {
                        i,
                        j,
                        got: alpha[i * n + j].degree(),
                        expected: group.order(),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let value = beta[(i * n + j) * n + k];
                    if value >= group.order() {
                        return Err(DescentError::BetaOutOfRange { i, j, k, value });
                    }
                }
            }
        }
        Ok(CocycleDatum {
            group,
            n_indices,
            alpha,
            beta,
        })
    }

    /// Identity transitions, identity factors.
    pub fn trivial(group: FiniteGroup, n_indices: usize) -> Self {
        let order = group.order();
        let identity = group.identity();
        CocycleDatum {
            group,
            n_indices,
            alpha: vec![Automorphism::identity(order); n_indices * n_indices],
            beta: vec![identity; n_indices * n_indices * n_indices],
        }
    }

    /// Inner datum attached to a square of group elements g_ij:
    /// α_ij = ι(g_ij) and β_ijk = g_ij·g_jk·g_ik⁻¹.
    pub fn from_inner(
        group: FiniteGroup,
        n_indices: usize,
        elements: &[usize],
    ) -> Result<Self, DescentError> {
        let n = n_indices;
        if elements.len() != n * n {
            return Err(DescentError::AlphaCount {
                n,
                expected: n * n,
                got: elements.len(),
            });
        }
        if let Some((pos, &value)) = elements
            .iter()
            .enumerate()
            .find(|(_, &g)| g >= group.order())
        {
            return Err(DescentError::IndexMapOutOfRange {
                position: pos,
                value,
            });
        }
        let alpha: Vec<Automorphism> = elements.iter().map(|&g| group.inner(g)).collect();
        let mut beta = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let g = group.mul(
                        group.mul(elements[i * n + j], elements[j * n + k]),
                        group.inv(elements[i * n + k]),
                    );
                    beta.push(g);
                }
            }
        }
        Ok(CocycleDatum {
            group,
            n_indices,
            alpha,
            beta,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn n_indices(&self) -> usize {
        self.n_indices
    }

    pub fn alpha(&self, i: usize, j: usize) -> &Automorphism {
        &self.alpha[i * self.n_indices + j]
    }

    pub fn beta(&self, i: usize, j: usize, k: usize) -> usize {
        self.beta[(i * self.n_indices + j) * self.n_indices + k]
    }

    /// Replace one factor element (used to probe the verifiers).
    pub fn with_beta(mut self, i: usize, j: usize, k: usize, value: usize) -> Self {
        let n = self.n_indices;
        self.beta[(i * n + j) * n + k] = value;
        self
    }

    /// Check the normalization conditions on repeated adjacent indices, the
    /// transition triangle for every ordered triple, and factor coherence
    /// for every ordered quadruple.  Vacuous when there are fewer than
    /// three indices.
    pub fn verify_cocycle(&self) -> DescentReport {
        let n = self.n_indices;
        let g = &self.group;
        let mut violations = Vec::new();
        for i in 0..n {
            if !self.alpha(i, i).is_identity() {
                violations.push(Violation {
                    check: "normalization",
                    indices: vec![i, i],
                    detail: "transition map at a repeated index is not the identity".into(),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.beta(i, i, j) != g.identity() {
                    violations.push(Violation {
                        check: "normalization",
                        indices: vec![i, i, j],
                        detail: "factor element with a repeated leading index".into(),
                    });
                }
                if self.beta(i, j, j) != g.identity() {
                    violations.push(Violation {
                        check: "normalization",
                        indices: vec![i, j, j],
                        detail: "factor element with a repeated trailing index".into(),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.alpha(j, k).compose(self.alpha(i, j));
                    let rhs = self.alpha(i, k).compose(&g.inner(self.beta(i, j, k)));
                    if lhs != rhs {
                        violations.push(Violation {
                            check: "transition-compatibility",
                            indices: vec![i, j, k],
                            detail: "composed transitions disagree with the factor conjugation"
                                .into(),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = g.mul(
                            self.alpha(i, j).inverse().apply(self.beta(j, k, l)),
                            self.beta(i, j, l),
                        );
                        let rhs = g.mul(self.beta(i, j, k), self.beta(i, k, l));
                        if lhs != rhs {
                            violations.push(Violation {
                                check: "factor-coherence",
                                indices: vec![i, j, k, l],
                                detail: "the two factor routes differ".into(),
                            });
                        }
                    }
                }
            }
        }
        DescentReport::conclude(n < 3, violations)
    }
}

/// A cocycle datum indexed by a quotient group: one transition automorphism
/// per quotient element and one factor element per ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedCocycleDatum {
    group: FiniteGroup,
    quotient: FiniteGroup,
    alpha: Vec<Automorphism>,
    beta: Vec<usize>,
}

impl RefinedCocycleDatum {
    pub fn new(
        group: FiniteGroup,
        quotient: FiniteGroup,
        alpha: Vec<Automorphism>,
        beta: Vec<usize>,
    ) -> Result<Self, DescentError> {
        let q = quotient.order();
        if alpha.len() != q {
            return Err(DescentError::AlphaCount {
                n: q,
                expected: q,
                got: alpha.len(),
            });
        }
        if beta.len() != q * q {
            return Err(DescentError::BetaCount {
                n: q,
                expected: q * q,
                got: beta.len(),
            });
        }
        for (r, a) in alpha.iter().enumerate() {
            if a.degree() != group.order() {
                return Err(DescentError::AlphaDegree {
                    i: r,
                    j: r,
                    got: a.degree(),
                    expected: group.order(),
                });
            }
        }
        if let Some((pos, &value)) = beta.iter().enumerate().find(|(_, &b)| b >= group.order()) {
            return Err(DescentError::BetaOutOfRange {
                i: pos / q,
                j: pos % q,
                k: 0,
                value,
            });
        }
        Ok(RefinedCocycleDatum {
            group,
            quotient,
            alpha,
            beta,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn alpha(&self, r: usize) -> &Automorphism {
        &self.alpha[r]
    }

    pub fn beta(&self, r: usize, s: usize) -> usize {
        self.beta[r * self.quotient.order() + s]
    }

    /// Check the refined identities: α^s ∘ α^r = α^{rs} ∘ ι(β^{r,s}) for
    /// every pair, and (α^r)⁻¹(β^{s,w})·β^{r,sw} = β^{r,s}·β^{rs,w} for
    /// every triple, plus identity normalization at the quotient identity.
    pub fn verify(&self) -> DescentReport {
        let q = self.quotient.order();
        let e = self.quotient.identity();
        let g = &self.group;
        let mut violations = Vec::new();
        if !self.alpha(e).is_identity() {
            violations.push(Violation {
                check: "normalization",
                indices: vec![e],
                detail: "transition at the quotient identity is not the identity map".into(),
            });
        }
        for r in 0..q {
            if self.beta(e, r) != g.identity() || self.beta(r, e) != g.identity() {
                violations.push(Violation {
                    check: "normalization",
                    indices: vec![r],
                    detail: "factor element at the quotient identity is not trivial".into(),
                });
            }
        }
        for r in 0..q {
            for s in 0..q {
                let t = self.quotient.mul(r, s);
                let lhs = self.alpha(s).compose(self.alpha(r));
                let rhs = self.alpha(t).compose(&g.inner(self.beta(r, s)));
                if lhs != rhs {
                    violations.push(Violation {
                        check: "refined-transition",
                        indices: vec![r, s],
                        detail: "composed transitions disagree with the factor conjugation".into(),
                    });
                }
            }
        }
        for r in 0..q {
            for s in 0..q {
                for w in 0..q {
                    let sw = self.quotient.mul(s, w);
                    let rs = self.quotient.mul(r, s);
                    let lhs = g.mul(
                        self.alpha(r).inverse().apply(self.beta(s, w)),
                        self.beta(r, sw),
                    );
                    let rhs = g.mul(self.beta(r, s), self.beta(rs, w));
                    if lhs != rhs {
                        violations.push(Violation {
                            check: "refined-factor",
                            indices: vec![r, s, w],
                            detail: "the two factor routes differ".into(),
                        });
                    }
                }
            }
        }
        DescentReport::conclude(false, violations)
    }
}

/// Extract the refined datum of a group extension: transitions by
/// conjugation with the section lifts, factors from the section's failure
/// to be a homomorphism.  The refined identities are verified before
/// returning.
pub fn extension_cocycle(ext: &GroupExtension) -> Result<RefinedCocycleDatum, DescentError> {
    let q = ext.quotient().order();
    let alpha: Vec<Automorphism> = (0..q).map(|r| ext.conjugation_on_kernel(r)).collect();
    let mut beta = Vec::with_capacity(q * q);
    for r in 0..q {
        for s in 0..q {
            beta.push(ext.factor_element(r, s));
        }
    }
    let refined = RefinedCocycleDatum {
        group: ext.kernel_group().clone(),
        quotient: ext.quotient().clone(),
        alpha,
        beta,
    };
    let report = refined.verify();
    if let Some(v) = report.violations.first() {
        return Err(DescentError::RefinedViolation {
            identity: v.check,
            indices: v.indices.clone(),
        });
    }
    Ok(refined)
}

/// Pull a refined datum back along a map of plain indices into the
/// quotient: α_ij = α^{f(i)⁻¹f(j)} and β_ijk = β^{f(i)⁻¹f(j), f(j)⁻¹f(k)}.
pub fn induce_plain(
    refined: &RefinedCocycleDatum,
    index_map: &[usize],
) -> Result<CocycleDatum, DescentError> {
    if index_map.is_empty() {
        return Err(DescentError::EmptyIndexMap);
    }
    let quotient = refined.quotient();
    if let Some((pos, &value)) = index_map
        .iter()
        .enumerate()
        .find(|(_, &f)| f >= quotient.order())
    {
        return Err(DescentError::IndexMapOutOfRange {
            position: pos,
            value,
        });
    }
    let n = index_map.len();
    let step = |i: usize, j: usize| quotient.mul(quotient.inv(index_map[i]), index_map[j]);
    let mut alpha = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            alpha.push(refined.alpha(step(i, j)).clone());
        }
    }
    let mut beta = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                beta.push(refined.beta(step(i, j), step(j, k)));
            }
        }
    }
    Ok(CocycleDatum {
        group: refined.group().clone(),
        n_indices: n,
        alpha,
        beta,
    })
}

/// Whether m intertwines a → b, i.e. m·a(g) = b(g)·m for every g.
pub fn is_intertwiner(
    m: &ExactMatrix,
    a: &Representation,
    b: &Representation,
) -> Result<bool, DescentError> {
    for g in 0..a.group().order() {
        if m.mul(a.matrix(g))? != b.matrix(g).mul(m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The canonical component ρ(α(β)) intertwining
/// pullback(ρ, α∘ι(β)) → pullback(ρ, α), verified before returning.
pub fn mu_component(
    table: &CharacterTable,
    alpha: &Automorphism,
    beta: usize,
    row: usize,
) -> Result<ExactMatrix, DescentError> {
    let group = table.group();
    let model = table.model(row);
    let m = model.matrix(alpha.apply(beta)).clone();
    let twisted = model.pullback(&alpha.compose(&group.inner(beta)))?;
    let plain = model.pullback(alpha)?;
    if !is_intertwiner(&m, &twisted, &plain)? {
        return Err(DescentError::MuNotIntertwining);
    }
    Ok(m)
}

/// Row permutations under every transition of a datum: entry [i·n + j] is
/// the permutation s ↦ v with χ_v = χ_s ∘ α_ij.
fn compute_transport(
    datum: &CocycleDatum,
    table: &CharacterTable,
) -> Result<Vec<Vec<usize>>, DescentError> {
    let n = datum.n_indices();
    let mut transport = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            transport.push(table.char_action(datum.alpha(i, j))?);
        }
    }
    Ok(transport)
}

/// Orbit partition of 0..count under a set of permutations (inverses are
/// added, so any set generates its group).  Orbits are listed by least
/// member, each sorted ascending.
fn orbits_under(perms: &[Vec<usize>], count: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = perms.to_vec();
    for p in perms {
        let mut inv = vec![0; p.len()];
        for (x, &y) in p.iter().enumerate() {
            inv[y] = x;
        }
        all.push(inv);
    }
    let mut seen = vec![false; count];
    let mut orbits = Vec::new();
    for start in 0..count {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut queue = vec![start];
        while let Some(s) = queue.pop() {
            for p in &all {
                let v = p[s];
                if !seen[v] {
                    seen[v] = true;
                    members.push(v);
                    queue.push(v);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}

/// Orbits of the irreducible rows under the quotient transports of a
/// refined datum, with the stabilizer of each orbit's least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSpace {
    pub orbits: Vec<Vec<usize>>,
    pub stabilizers: Vec<Vec<usize>>,
    pub transport: Vec<Vec<usize>>,
}

pub fn dual_space(
    refined: &RefinedCocycleDatum,
    table: &CharacterTable,
) -> Result<DualSpace, DescentError> {
    if table.group() != refined.group() {
        return Err(DescentError::WrongGroup);
    }
    let q = refined.quotient().order();
    let transport: Vec<Vec<usize>> = (0..q)
        .map(|r| table.char_action(refined.alpha(r)))
        .collect::<Result<_, _>>()?;
    let orbits = orbits_under(&transport, table.count());
    let stabilizers = orbits
        .iter()
        .map(|orbit| {
            let rep = orbit[0];
            (0..q).filter(|&r| transport[r][rep] == rep).collect()
        })
        .collect();
    Ok(DualSpace {
        orbits,
        stabilizers,
        transport,
    })
}

/// Row orbits under the transport permutations of a plain datum.
pub fn dual_space_plain(
    datum: &CocycleDatum,
    table: &CharacterTable,
) -> Result<Vec<Vec<usize>>, DescentError> {
    if table.group() != datum.group() {
        return Err(DescentError::WrongGroup);
    }
    let transport = compute_transport(datum, table)?;
    Ok(orbits_under(&transport, table.count()))
}

/// The scalar twist data of a cocycle datum: normalized transport
/// intertwiners between dual models and the scalar each triangle composite
/// differs from the factor action by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistClass {
    pub n_indices: usize,
    /// Row permutation per ordered pair, indexed [i·n + j].
    pub transport: Vec<Vec<usize>>,
    /// Normalized intertwiner per (i, j, row).
    pub taus: BTreeMap<(usize, usize, usize), ExactMatrix>,
    /// Scalar per (row, i, j, k): the triangle composite equals
    /// scalar · dual_row(β_ijk).
    pub scalars: BTreeMap<(usize, usize, usize, usize), CycloElement>,
    /// How the intertwiners are scaled.
    pub normalization: &'static str,
}

impl TwistClass {
    pub fn tau(&self, i: usize, j: usize, row: usize) -> &ExactMatrix {
        &self.taus[&(i, j, row)]
    }

    pub fn scalar(&self, row: usize, i: usize, j: usize, k: usize) -> &CycloElement {
        &self.scalars[&(row, i, j, k)]
    }
}

const TAU_NORMALIZATION: &str = "first nonzero row-major entry scaled to 1";

fn normalize_leading(m: &ExactMatrix) -> Result<ExactMatrix, DescentError> {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.at(r, c);
            if !v.is_zero() {
                return Ok(m.scale(&v.inv()?));
            }
        }
    }
    Err(DescentError::ZeroIntertwiner)
}

fn compute_taus(
    datum: &CocycleDatum,
    table: &CharacterTable,
    transport: &[Vec<usize>],
    duals: &[Representation],
) -> Result<BTreeMap<(usize, usize, usize), ExactMatrix>, DescentError> {
    let n = datum.n_indices();
    let mut taus = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for row in 0..table.count() {
                let target = transport[i * n + j][row];
                let pulled = duals[row].pullback(datum.alpha(i, j))?;
                let basis = intertwiner_basis(&pulled, &duals[target])?;
                if basis.len() != 1 {
                    return Err(DescentError::TauNotUnique {
                        i,
                        j,
                        row,
                        dimension: basis.len(),
                    });
                }
                taus.insert((i, j, row), normalize_leading(&basis[0])?);
            }
        }
    }
    Ok(taus)
}

fn twist_scalars(
    datum: &CocycleDatum,
    table: &CharacterTable,
    transport: &[Vec<usize>],
    taus: &BTreeMap<(usize, usize, usize), ExactMatrix>,
    duals: &[Representation],
) -> Result<BTreeMap<(usize, usize, usize, usize), CycloElement>, DescentError> {
    let n = datum.n_indices();
    let group = datum.group();
    let mut scalars = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let beta = datum.beta(i, j, k);
                for s in 0..table.count() {
                    let t = transport[k * n + i][s];
                    let u = transport[j * n + k][t];
                    let composite = taus[&(i, j, u)]
                        .mul(&taus[&(j, k, t)])?
                        .mul(&taus[&(k, i, s)])?;
                    let undone = composite.mul(duals[s].matrix(group.inv(beta)))?;
                    let c = schur_scalar(&undone).map_err(|_| DescentError::TwistNotScalar {
                        row: s,
                        i,
                        j,
                        k,
                    })?;
                    scalars.insert((s, i, j, k), c);
                }
            }
        }
    }
    Ok(scalars)
}

/// Compute the full twist data of a datum over its group's character table.
pub fn compute_twist(
    datum: &CocycleDatum,
    table: &CharacterTable,
) -> Result<TwistClass, DescentError> {
    if table.group() != datum.group() {
        return Err(DescentError::WrongGroup);
    }
    let transport = compute_transport(datum, table)?;
    let duals: Vec<Representation> = (0..table.count()).map(|s| table.model(s).dual()).collect();
    let taus = compute_taus(datum, table, &transport, &duals)?;
    let scalars = twist_scalars(datum, table, &transport, &taus, &duals)?;
    Ok(TwistClass {
        n_indices: datum.n_indices(),
        transport,
        taus,
        scalars,
        normalization: TAU_NORMALIZATION,
    })
}

/// Recompute the twist scalars from externally supplied intertwiners
/// (any nonzero rescaling of the canonical ones).
pub fn compute_twist_with_taus(
    datum: &CocycleDatum,
    table: &CharacterTable,
    taus: BTreeMap<(usize, usize, usize), ExactMatrix>,
) -> Result<TwistClass, DescentError> {
    if table.group() != datum.group() {
        return Err(DescentError::WrongGroup);
    }
    let transport = compute_transport(datum, table)?;
    let duals: Vec<Representation> = (0..table.count()).map(|s| table.model(s).dual()).collect();
    let scalars = twist_scalars(datum, table, &transport, &taus, &duals)?;
    Ok(TwistClass {
        n_indices: datum.n_indices(),
        transport,
        taus,
        scalars,
        normalization: "supplied externally",
    })
}

/// Verify the quadruple coherence of the twist data: for every ordered
/// quadruple (i, j, k, l) and every row s, the four-step composite of
/// intertwiners must match both three-triangle reductions, scalars and
/// factor actions included.  Vacuous when there are fewer than four
/// indices.
pub fn verify_twist_cocycle(
    twist: &TwistClass,
    datum: &CocycleDatum,
    table: &CharacterTable,
) -> Result<DescentReport, DescentError> {
    if table.group() != datum.group() {
        return Err(DescentError::WrongGroup);
    }
    let n = datum.n_indices();
    let group = datum.group();
    let duals: Vec<Representation> = (0..table.count()).map(|s| table.model(s).dual()).collect();
    let transport = &twist.transport;
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for s in 0..table.count() {
                        let x1 = transport[l * n + i][s];
                        let x2 = transport[k * n + l][x1];
                        let x3 = transport[j * n + k][x2];
                        let composite = twist
                            .tau(i, j, x3)
                            .mul(twist.tau(j, k, x2))?
                            .mul(twist.tau(k, l, x1))?
                            .mul(twist.tau(l, i, s))?;

                        let scalar_a = twist
                            .scalar(s, i, j, k)
                            .mul(twist.scalar(s, i, k, l))
                            .div(twist.scalar(s, i, k, i))?;
                        let element_a = group.mul(
                            group.mul(datum.beta(i, j, k), group.inv(datum.beta(i, k, i))),
                            datum.beta(i, k, l),
                        );
                        let rhs_a = duals[s].matrix(element_a).scale(&scalar_a);
                        if composite != rhs_a {
                            violations.push(Violation {
                                check: "twist-quadruple-inner",
                                indices: vec![i, j, k, l],
                                detail: format!("row {s}: composite differs from the (i,k)-diagonal reduction"),
                            });
                        }

                        let scalar_b = twist
                            .scalar(x3, j, k, l)
                            .mul(twist.scalar(s, i, j, l))
                            .div(twist.scalar(x3, j, l, j))?;
                        let element_b = group.mul(
                            datum.alpha(i, j).inverse().apply(group.mul(
                                datum.beta(j, k, l),
                                group.inv(datum.beta(j, l, j)),
                            )),
                            datum.beta(i, j, l),
                        );
                        let rhs_b = duals[s].matrix(element_b).scale(&scalar_b);
                        if composite != rhs_b {
                            violations.push(Violation {
                                check: "twist-quadruple-outer",
                                indices: vec![i, j, k, l],
                                detail: format!("row {s}: composite differs from the (j,l)-diagonal reduction"),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(DescentReport::conclude(n < 4, violations))
}

/// Evaluate the factor-coherence identity through every irreducible model:
/// for each ordered quadruple, the two routes conjugated into place by
/// α_il must give the same matrix.  Vacuous when there are fewer than four
/// indices.
pub fn tetrahedron_check(
    datum: &CocycleDatum,
    table: &CharacterTable,
) -> Result<DescentReport, DescentError> {
    if table.group() != datum.group() {
        return Err(DescentError::WrongGroup);
    }
    let n = datum.n_indices();
    let group = datum.group();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let direct = group.mul(datum.beta(i, j, k), datum.beta(i, k, l));
                    let indirect = group.mul(
                        datum.alpha(i, j).inverse().apply(datum.beta(j, k, l)),
                        datum.beta(i, j, l),
                    );
                    let push = datum.alpha(i, l);
                    for row in 0..table.count() {
                        let model = table.model(row);
                        if model.matrix(push.apply(direct)) != model.matrix(push.apply(indirect)) {
                            violations.push(Violation {
                                check: "two-route-transport",
                                indices: vec![i, j, k, l],
                                detail: format!("row {row}: transported factor routes differ"),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(DescentReport::conclude(n < 4, violations))
}

/// Compare the categorical side with the group-algebra side: for every
/// ordered triple the composite α_ik⁻¹ ∘ α_jk ∘ α_ij of basis permutations
/// of the group algebra must equal conjugation by the factor element, i.e.
/// the comparison twist is the identity.  Vacuous when there are fewer
/// than three indices.
pub fn verify_gerbe_side(datum: &CocycleDatum) -> DescentReport {
    let n = datum.n_indices();
    let group = datum.group();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let composite = datum
                    .alpha(i, k)
                    .inverse()
                    .compose(datum.alpha(j, k))
                    .compose(datum.alpha(i, j));
                let conjugation = group.inner(datum.beta(i, j, k));
                if composite != conjugation {
                    let witness = (0..group.order())
                        .find(|&x| composite.apply(x) != conjugation.apply(x))
                        .unwrap_or(0);
                    violations.push(Violation {
                        check: "algebra-comparison",
                        indices: vec![i, j, k],
                        detail: format!(
                            "comparison twist moves basis vector {witness}: permutation side sends it to {}, conjugation side to {}",
                            composite.apply(witness),
                            conjugation.apply(witness)
                        ),
                    });
                }
            }
        }
    }
    DescentReport::conclude(n < 3, violations)
}

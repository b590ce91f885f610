//! Character tables and matrix models of irreducible representations.
//!
//! The table is computed exactly: class-multiplication matrices are
//! simultaneously diagonalized over a prime field F_p chosen so that p ≡ 1
//! (mod e) and p² > 4|G| (e the group exponent), degrees are recovered from
//! the class-algebra eigenvalues, and character values are lifted to the
//! cyclotomic field Q(ζ_e) by Fourier inversion over the power map.  Matrix
//! models are cut out of the regular representation by a central idempotent
//! together with a multiplicity-one character of a cyclic subgroup.

use crate::cyclo::{CycloElement, CycloError};
use crate::group::{Automorphism, ConjugacyClasses, FiniteGroup};
use crate::matrix::{solve_sylvester, ExactMatrix, MatrixError};
use crate::modular::{
    dixon_lift, dixon_prime, root_of_unity_mod, FpMatrix, ModularError, ModularScalar,
};
use crate::rational::rat;
use num::Signed;
use thiserror::Error;

/// Ceiling for the table prime search; far above anything a valid input
/// needs, but keeps a malformed call from spinning.
pub const DEFAULT_PRIME_BOUND: u64 = 1 << 20;

#[derive(Debug, Error)]
pub enum RepError {
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("class-algebra eigenspaces did not refine to dimension one")]
    EigenSplitIncomplete,
    #[error("class-algebra eigenvector has vanishing identity coordinate")]
    BadEigenvector,
    #[error("no degree d with d\u{b2} \u{2261} {target} (mod {prime}) and 2d < {prime}")]
    NoDegree { target: u64, prime: u64 },
    #[error("character rows failed the orthogonality verification")]
    OrthogonalityFailed,
    #[error("squared degrees do not sum to the group order")]
    DegreeSumFailed,
    #[error("no cyclic subgroup hosts the degree-{degree} irreducible with multiplicity one")]
    NoCyclicHost { degree: usize },
    #[error("expected {expected} matrices (one per element), got {got}")]
    WrongMatrixCount { got: usize, expected: usize },
    #[error("matrices must be square, of one size and one cyclotomic order")]
    InhomogeneousMatrices,
    #[error("the identity element must map to the identity matrix")]
    IdentityNotIdentity,
    #[error("multiplicativity fails at the element pair ({a}, {b})")]
    NotMultiplicative { a: usize, b: usize },
    #[error("multiplicity of row {row} is not a nonnegative integer")]
    NonIntegralMultiplicity { row: usize },
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("composed character is not a table row")]
    NotARowPermutation,
}

/// A representation as one exact matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    group: FiniteGroup,
    matrices: Vec<ExactMatrix>,
}

impl Representation {
    /// Validate and wrap: one square matrix per element, identity to
    /// identity, multiplicative on every pair.
    pub fn new(group: FiniteGroup, matrices: Vec<ExactMatrix>) -> Result<Self, RepError> {
        if matrices.len() != group.order() {
            return Err(RepError::WrongMatrixCount {
                got: matrices.len(),
                expected: group.order(),
            });
        }
        let dim = matrices[0].rows();
        let order = matrices[0].order();
        if matrices
            .iter()
            .any(|m| m.rows() != dim || m.cols() != dim || m.order() != order)
        {
            return Err(RepError::InhomogeneousMatrices);
        }
        if !matrices[group.identity()].is_identity() {
            return Err(RepError::IdentityNotIdentity);
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let prod = matrices[a].mul(&matrices[b])?;
                if prod != matrices[group.mul(a, b)] {
                    return Err(RepError::NotMultiplicative { a, b });
                }
            }
        }
        Ok(Representation { group, matrices })
    }

    fn new_unchecked(group: FiniteGroup, matrices: Vec<ExactMatrix>) -> Self {
        Representation { group, matrices }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].rows()
    }

    /// Cyclotomic order of the matrix entries.
    pub fn order(&self) -> u64 {
        self.matrices[0].order()
    }

    pub fn matrix(&self, g: usize) -> &ExactMatrix {
        &self.matrices[g]
    }

    /// Trace at each class representative.
    pub fn character(&self, classes: &ConjugacyClasses) -> Vec<CycloElement> {
        classes
            .representatives()
            .iter()
            .map(|&g| self.matrices[g].trace())
            .collect()
    }

    /// Inner tensor product: same group, Kronecker matrices.
    pub fn tensor(&self, other: &Self) -> Result<Self, RepError> {
        if self.group != other.group {
            return Err(RepError::GroupMismatch);
        }
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.kron(b))
            .collect::<Result<_, _>>()?;
        Ok(Representation::new_unchecked(self.group.clone(), matrices))
    }

    /// Contragredient: g ↦ transpose of the matrix at g⁻¹.
    pub fn dual(&self) -> Self {
        let matrices = (0..self.group.order())
            .map(|g| self.matrices[self.group.inv(g)].transpose())
            .collect();
        Representation::new_unchecked(self.group.clone(), matrices)
    }

    /// Precompose with an automorphism: g ↦ matrix at α(g).
    pub fn pullback(&self, alpha: &Automorphism) -> Result<Self, RepError> {
        if alpha.degree() != self.group.order() {
            return Err(RepError::GroupMismatch);
        }
        let matrices = (0..self.group.order())
            .map(|g| self.matrices[alpha.apply(g)].clone())
            .collect();
        Ok(Representation::new_unchecked(self.group.clone(), matrices))
    }

    /// Re-express entries in a larger cyclotomic field.
    pub fn promote(&self, new_order: u64) -> Result<Self, RepError> {
        let matrices = self
            .matrices
            .iter()
            .map(|m| m.promote(new_order))
            .collect::<Result<_, _>>()?;
        Ok(Representation::new_unchecked(self.group.clone(), matrices))
    }
}

/// Representation of a·|B| + b on the tensor product, matching the element
/// indexing of [`FiniteGroup::direct_product`].
pub fn outer_tensor(a: &Representation, b: &Representation) -> Result<Representation, RepError> {
    let product = FiniteGroup::direct_product(a.group(), b.group());
    let order = num::integer::lcm(a.order(), b.order());
    let mut matrices = Vec::with_capacity(product.order());
    for ga in 0..a.group().order() {
        for gb in 0..b.group().order() {
            let ma = a.matrix(ga).promote(order)?;
            let mb = b.matrix(gb).promote(order)?;
            matrices.push(ma.kron(&mb)?);
        }
    }
    Ok(Representation::new_unchecked(product, matrices))
}

/// Left translation action on the group algebra: e_x ↦ e_{gx}.
pub fn regular_representation(group: &FiniteGroup, cyclo_order: u64) -> Representation {
    let n = group.order();
    let matrices = (0..n)
        .map(|g| {
            let perm: Vec<usize> = (0..n).map(|x| group.mul(g, x)).collect();
            ExactMatrix::permutation(cyclo_order, &perm)
        })
        .collect();
    Representation::new_unchecked(group.clone(), matrices)
}

/// Convolution product on group-algebra coefficient vectors.
pub fn algebra_product(
    group: &FiniteGroup,
    a: &[CycloElement],
    b: &[CycloElement],
) -> Vec<CycloElement> {
    let order = a[0].order();
    let mut out = vec![CycloElement::zero(order); group.order()];
    for (x, ax) in a.iter().enumerate() {
        if ax.is_zero() {
            continue;
        }
        for (y, by) in b.iter().enumerate() {
            if by.is_zero() {
                continue;
            }
            let g = group.mul(x, y);
            out[g] = out[g].add(&ax.mul(by));
        }
    }
    out
}

/// Basis of T with T·ρ_a(g) = ρ_b(g)·T for all g, i.e. Hom(a, b).
pub fn intertwiner_basis(
    a: &Representation,
    b: &Representation,
) -> Result<Vec<ExactMatrix>, RepError> {
    if a.group() != b.group() {
        return Err(RepError::GroupMismatch);
    }
    let constraints: Vec<(ExactMatrix, ExactMatrix)> = (0..a.group().order())
        .map(|g| (a.matrix(g).clone(), b.matrix(g).clone()))
        .collect();
    Ok(solve_sylvester(&constraints)?)
}

/// Extract λ from a matrix known to be λ·identity.
pub fn schur_scalar(m: &ExactMatrix) -> Result<CycloElement, RepError> {
    Ok(m.as_scalar()?)
}

/// Formal sums of irreducibles by row index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector(pub Vec<u64>);

impl MultiplicityVector {
    pub fn zero(count: usize) -> Self {
        MultiplicityVector(vec![0; count])
    }

    pub fn basis(count: usize, row: usize) -> Self {
        let mut v = vec![0; count];
        v[row] = 1;
        MultiplicityVector(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    /// The split tensor product: componentwise multiplication, under which
    /// the distinct irreducibles are orthogonal idempotents.
    pub fn tensor_split(&self, other: &Self) -> Result<Self, RepError> {
        if self.0.len() != other.0.len() {
            return Err(RepError::LengthMismatch {
                got: other.0.len(),
                expected: self.0.len(),
            });
        }
        Ok(MultiplicityVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect(),
        ))
    }
}

/// The character table of a finite group, with one exact matrix model per
/// row.  Rows are sorted by ascending degree, then by descending
/// lexicographic comparison of the value vectors, which places the trivial
/// character first.  Classes are in the order of [`FiniteGroup::conjugacy_classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    group: FiniteGroup,
    classes: ConjugacyClasses,
    exponent: u64,
    prime: u64,
    degrees: Vec<usize>,
    values: Vec<Vec<CycloElement>>,
    models: Vec<Representation>,
}

impl CharacterTable {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    /// The cyclotomic order e of the value field Q(ζ_e).
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// The prime used for the modular eigenvalue stage.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn count(&self) -> usize {
        self.values.len()
    }

    pub fn degree(&self, row: usize) -> usize {
        self.degrees[row]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn value(&self, row: usize, class: usize) -> &CycloElement {
        &self.values[row][class]
    }

    pub fn row(&self, row: usize) -> &[CycloElement] {
        &self.values[row]
    }

    pub fn model(&self, row: usize) -> &Representation {
        &self.models[row]
    }

    pub fn trivial_index(&self) -> usize {
        let one = CycloElement::one(self.exponent);
        (0..self.count())
            .find(|&i| self.values[i].iter().all(|v| *v == one))
            .expect("every table has a trivial row")
    }

    pub fn find_row(&self, values: &[CycloElement]) -> Option<usize> {
        (0..self.count()).find(|&i| self.values[i].as_slice() == values)
    }

    /// ⟨a, b⟩ = |G|⁻¹ Σ_c h_c · a(c) · conj(b(c)).
    pub fn inner_product(&self, a: &[CycloElement], b: &[CycloElement]) -> CycloElement {
        let mut acc = CycloElement::zero(self.exponent);
        for (c, size) in self.classes.sizes().iter().enumerate() {
            let term = a[c].mul(&b[c].conj()).scale(&rat(*size as i64, 1));
            acc = acc.add(&term);
        }
        acc.scale(&rat(1, self.group.order() as i64))
    }

    /// Multiplicities ⟨χ, χ_i⟩ of a class function, which must be a genuine
    /// character (nonnegative integers).
    pub fn decompose(&self, character: &[CycloElement]) -> Result<MultiplicityVector, RepError> {
        if character.len() != self.classes.count() {
            return Err(RepError::LengthMismatch {
                got: character.len(),
                expected: self.classes.count(),
            });
        }
        let promoted: Vec<CycloElement> = character
            .iter()
            .map(|v| v.promote(self.exponent))
            .collect::<Result<_, _>>()?;
        let mut mults = Vec::with_capacity(self.count());
        for row in 0..self.count() {
            let m = self.inner_product(&promoted, &self.values[row]);
            let q = m
                .as_rational()
                .filter(|q| q.is_integer() && !q.is_negative())
                .ok_or(RepError::NonIntegralMultiplicity { row })?;
            mults.push(q.to_integer().try_into().map_err(|_| {
                RepError::NonIntegralMultiplicity { row }
            })?);
        }
        Ok(MultiplicityVector(mults))
    }

    pub fn decompose_rep(&self, rep: &Representation) -> Result<MultiplicityVector, RepError> {
        if rep.group() != &self.group {
            return Err(RepError::GroupMismatch);
        }
        self.decompose(&rep.character(&self.classes))
    }

    /// Multiplicity vector of the tensor-product unit (the trivial row).
    pub fn unit_tensor(&self) -> MultiplicityVector {
        MultiplicityVector::basis(self.count(), self.trivial_index())
    }

    /// Multiplicity vector of the split-product unit (every row once).
    pub fn unit_split(&self) -> MultiplicityVector {
        MultiplicityVector(vec![1; self.count()])
    }

    /// The permutation s ↦ v with χ_v = χ_s ∘ α.  Composing permutations
    /// reverses the order of the underlying automorphisms.
    pub fn char_action(&self, alpha: &Automorphism) -> Result<Vec<usize>, RepError> {
        if alpha.degree() != self.group.order() {
            return Err(RepError::GroupMismatch);
        }
        let reps = self.classes.representatives();
        let mut perm = Vec::with_capacity(self.count());
        for s in 0..self.count() {
            let composed: Vec<CycloElement> = reps
                .iter()
                .map(|&g| self.values[s][self.classes.class_of(alpha.apply(g))].clone())
                .collect();
            perm.push(
                self.find_row(&composed)
                    .ok_or(RepError::NotARowPermutation)?,
            );
        }
        Ok(perm)
    }

    /// Group-algebra coefficients of the central idempotents, one per row:
    /// E_i = (d_i/|G|) Σ_g χ_i(g⁻¹) · g.
    pub fn central_idempotents(&self) -> Vec<Vec<CycloElement>> {
        let n = self.group.order();
        (0..self.count())
            .map(|i| {
                let scale = rat(self.degrees[i] as i64, n as i64);
                (0..n)
                    .map(|g| {
                        let c = self.classes.class_of(self.group.inv(g));
                        self.values[i][c].scale(&scale)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Compute the character table with the default prime-search ceiling.
pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable, RepError> {
    character_table_with_prime_bound(group, DEFAULT_PRIME_BOUND)
}

pub fn character_table_with_prime_bound(
    group: &FiniteGroup,
    prime_bound: u64,
) -> Result<CharacterTable, RepError> {
    let classes = group.conjugacy_classes();
    let k = classes.count();
    let n = group.order();
    let e = group.exponent();
    let p = dixon_prime(n as u64, e, prime_bound)?;
    let z = root_of_unity_mod(p, e)?;

    // Class multiplication coefficients a[i][j][k] = #{(x, y) ∈ C_i × C_j :
    // x·y = rep_k}, counted as #{x ∈ C_i : x⁻¹·rep_k ∈ C_j}.
    let reps = classes.representatives();
    let mut coeff = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for &x in classes.members(i) {
            for (kk, &rk) in reps.iter().enumerate() {
                let j = classes.class_of(group.mul(group.inv(x), rk));
                coeff[i][j][kk] += 1;
            }
        }
    }
    let mats: Vec<FpMatrix> = (0..k)
        .map(|i| {
            let rows: Vec<Vec<u64>> = (0..k)
                .map(|j| coeff[i][j].iter().map(|&c| c % p).collect())
                .collect();
            FpMatrix::from_rows(p, &rows)
        })
        .collect();

    // Refine the full space into joint eigenspaces.
    let mut spaces = vec![FpMatrix::identity(p, k)];
    for ni in &mats {
        if spaces.iter().all(|u| u.cols() == 1) {
            break;
        }
        let mut next = Vec::new();
        for u in &spaces {
            if u.cols() == 1 {
                next.push(u.clone());
                continue;
            }
            let restricted = u
                .solve(&ni.mul(u))
                .ok_or(RepError::EigenSplitIncomplete)?;
            let mut split_dims = 0;
            for lambda in 0..p {
                let kernel = restricted.sub_scalar_diag(lambda).null_space();
                if kernel.is_empty() {
                    continue;
                }
                let mut basis = FpMatrix::zero(p, u.cols(), kernel.len());
                for (col, vec) in kernel.iter().enumerate() {
                    for (row, &v) in vec.iter().enumerate() {
                        basis.set(row, col, v);
                    }
                }
                next.push(u.mul(&basis));
                split_dims += kernel.len();
                if split_dims == u.cols() {
                    break;
                }
            }
            if split_dims != u.cols() {
                return Err(RepError::EigenSplitIncomplete);
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|u| u.cols() != 1) {
        return Err(RepError::EigenSplitIncomplete);
    }

    // Each eigenvector, scaled so its identity-class coordinate is 1, lists
    // the class-algebra character values ω(K_j) = χ(g_j)·h_j/d.
    let sizes = classes.sizes();
    let inv_class: Vec<usize> = (0..k)
        .map(|j| classes.class_of(group.inv(reps[j])))
        .collect();
    let power_classes = group.power_class_table(&classes, e);
    let group_order = ModularScalar::new(n as u64, p);
    let mut rows: Vec<(usize, Vec<CycloElement>)> = Vec::with_capacity(k);
    for u in &spaces {
        let w0 = ModularScalar::new(u.at(0, 0), p);
        if w0.is_zero() {
            return Err(RepError::BadEigenvector);
        }
        let scale = w0.inv()?;
        let w: Vec<ModularScalar> = (0..k)
            .map(|j| ModularScalar::new(u.at(j, 0), p).mul(&scale))
            .collect();
        // |G|/d² = Σ_j ω(K_j)·ω(K_j')·h_j⁻¹.
        let mut s = ModularScalar::zero(p);
        for j in 0..k {
            let hj = ModularScalar::new(sizes[j] as u64, p).inv()?;
            s = s.add(&w[j].mul(&w[inv_class[j]]).mul(&hj));
        }
        let d_squared = group_order.mul(&s.inv()?);
        let degree = (1..=(p - 1) / 2)
            .find(|d| (d * d) % p == d_squared.value())
            .ok_or(RepError::NoDegree {
                target: d_squared.value(),
                prime: p,
            })? as usize;
        let d = ModularScalar::new(degree as u64, p);
        let residues: Vec<ModularScalar> = (0..k)
            .map(|j| {
                let hj_inv = ModularScalar::new(sizes[j] as u64, p).inv()?;
                Ok(d.mul(&w[j]).mul(&hj_inv))
            })
            .collect::<Result<_, RepError>>()?;
        let values = dixon_lift(&residues, &power_classes, e, z)?;
        rows.push((degree, values));
    }

    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
    let degrees: Vec<usize> = rows.iter().map(|r| r.0).collect();
    let values: Vec<Vec<CycloElement>> = rows.into_iter().map(|r| r.1).collect();

    if degrees.iter().map(|d| d * d).sum::<usize>() != n {
        return Err(RepError::DegreeSumFailed);
    }

    let table = CharacterTable {
        group: group.clone(),
        classes,
        exponent: e,
        prime: p,
        degrees,
        values,
        models: Vec::new(),
    };
    let one = CycloElement::one(e);
    for i in 0..table.count() {
        for j in 0..table.count() {
            let ip = table.inner_product(table.row(i), table.row(j));
            let expected = if i == j { ip == one } else { ip.is_zero() };
            if !expected {
                return Err(RepError::OrthogonalityFailed);
            }
        }
    }

    let models: Vec<Representation> = (0..table.count())
        .map(|i| build_model(&table, i))
        .collect::<Result<_, _>>()?;
    Ok(CharacterTable { models, ..table })
}

/// Cut a matrix model for one row out of the group algebra: right-multiply
/// by (central idempotent)·(cyclic-subgroup idempotent) and read off the
/// left translation action on the image.
fn build_model(table: &CharacterTable, row: usize) -> Result<Representation, RepError> {
    let group = &table.group;
    let classes = &table.classes;
    let e = table.exponent;
    let n = group.order();
    let degree = table.degrees[row];
    let values = &table.values[row];

    if degree == 1 {
        let matrices = (0..n)
            .map(|g| {
                ExactMatrix::from_rows(e, vec![vec![values[classes.class_of(g)].clone()]])
            })
            .collect::<Result<_, _>>()?;
        return Ok(Representation::new(group.clone(), matrices)?);
    }

    let central: Vec<CycloElement> = {
        let scale = rat(degree as i64, n as i64);
        (0..n)
            .map(|g| values[classes.class_of(group.inv(g))].scale(&scale))
            .collect()
    };

    for y in 0..n {
        let m = group.element_order(y);
        if m < 2 {
            continue;
        }
        let mut powers = Vec::with_capacity(m as usize);
        let mut x = group.identity();
        for _ in 0..m {
            powers.push(x);
            x = group.mul(x, y);
        }
        // Restriction multiplicities ⟨χ|_⟨y⟩, λ_t⟩ for every character λ_t
        // of the cyclic subgroup, λ_t(y^a) = ζ_m^{ta}.
        let step = (e / m) as i64;
        let mults: Vec<CycloElement> = (0..m as i64)
            .map(|t| {
                let mut acc = CycloElement::zero(e);
                for (a, &ya) in powers.iter().enumerate() {
                    let phase = CycloElement::root_of_unity(e, -step * t * a as i64);
                    acc = acc.add(&values[classes.class_of(ya)].mul(&phase));
                }
                acc.scale(&rat(1, m as i64))
            })
            .collect();
        for t in 0..m as i64 {
            // The image of right multiplication has dimension
            // degree · ⟨χ|_⟨y⟩, λ_{-t}⟩, so demand that that be one.
            if !mults[((m as i64 - t) % m as i64) as usize].is_one() {
                continue;
            }
            let mut cyclic_idem = vec![CycloElement::zero(e); n];
            for (a, &ya) in powers.iter().enumerate() {
                cyclic_idem[ya] =
                    CycloElement::root_of_unity(e, -step * t * a as i64).scale(&rat(1, m as i64));
            }
            let cutter = algebra_product(group, &central, &cyclic_idem);
            let mut right = ExactMatrix::zero(e, n, n);
            for col in 0..n {
                for (g, c) in cutter.iter().enumerate() {
                    if !c.is_zero() {
                        right.set(group.mul(col, g), col, c.clone());
                    }
                }
            }
            let basis = right.column_space_basis();
            if basis.cols() != degree {
                continue;
            }
            let matrices: Result<Vec<ExactMatrix>, MatrixError> = (0..n)
                .map(|g| {
                    let perm: Vec<usize> = (0..n).map(|x| group.mul(g, x)).collect();
                    let translated = ExactMatrix::permutation(e, &perm).mul(&basis)?;
                    basis.solve_right(&translated)
                })
                .collect();
            let Ok(matrices) = matrices else { continue };
            let character_matches = classes
                .representatives()
                .iter()
                .enumerate()
                .all(|(c, &g)| matrices[g].trace() == values[c]);
            if !character_matches {
                continue;
            }
            if let Ok(rep) = Representation::new(group.clone(), matrices) {
                return Ok(rep);
            }
        }
    }
    Err(RepError::NoCyclicHost { degree })
}

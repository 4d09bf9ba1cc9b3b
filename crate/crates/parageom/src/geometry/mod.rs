//! Invariant para-complex geometry on homogeneous models: curvature maps of
//! an eigenspace splitting, Nijenhuis tensor, symbol and prolongation of the
//! automorphism equation, volume-normalized normal forms, invariant metrics,
//! the canonical connection's torsion form, and Ricci curvature. Everything
//! is evaluated at the origin in exact rational arithmetic.

pub mod models;

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{linalg, Matrix, Poly, Scalar, UniPoly};
use crate::liealg::LieAlgebra;

fn sc_mul(a: &Scalar, b: &Scalar) -> Scalar {
    a * b
}

fn sc_scaled_add(acc: &mut Scalar, coeff: &Scalar, x: &Scalar) {
    *acc += &(coeff * x);
}

/// Entry-wise scalar extraction; geometry works at rational points only.
fn scalar_rows(m: &Matrix) -> Result<Vec<Vec<Scalar>>> {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            row.push(m.get(i, j).expect_scalar("geometric data")?);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn from_scalar_rows(rows: &[Vec<Scalar>]) -> Matrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| Poly::constant(s.clone())).collect())
            .collect(),
    )
    .expect("rectangular scalar rows")
}

fn identity(n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, Poly::one());
    }
    m
}

fn det3(rows: &[Vec<Scalar>]) -> Scalar {
    let m = |i: usize, j: usize| &rows[i][j];
    let c0 = &(m(1, 1) * m(2, 2)) - &(m(1, 2) * m(2, 1));
    let c1 = &(m(1, 0) * m(2, 2)) - &(m(1, 2) * m(2, 0));
    let c2 = &(m(1, 0) * m(2, 1)) - &(m(1, 1) * m(2, 0));
    &(&(m(0, 0) * &c0) - &(m(0, 1) * &c1)) + &(m(0, 2) * &c2)
}

/// Index and sign of `p_i ∧ p_j` in the cyclic basis
/// `(p_1∧p_2, p_2∧p_0, p_0∧p_1)` of `Λ²` of a three-dimensional space.
fn wedge_slot(i: usize, j: usize) -> Option<(usize, i64)> {
    match (i, j) {
        (1, 2) => Some((0, 1)),
        (2, 1) => Some((0, -1)),
        (2, 0) => Some((1, 1)),
        (0, 2) => Some((1, -1)),
        (0, 1) => Some((2, 1)),
        (1, 0) => Some((2, -1)),
        _ => None,
    }
}

/// `a ∧ b` of two vectors of a three-dimensional space, in the cyclic `Λ²`
/// basis: the classical cross-product formula.
fn wedge2(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    vec![
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// A Lie algebra split into an isotropy part and a complement carrying the
/// tangent-space data, optionally with an almost para-complex structure on
/// the complement. Bracket projections are cached at construction, so the
/// algebra must have rational structure constants on the chosen span.
pub struct HomogeneousModel {
    g: Arc<LieAlgebra>,
    h_idx: Vec<usize>,
    m_idx: Vec<usize>,
    j: Option<Matrix>,
    /// `[m_a, m_b]` split as (isotropy coordinates, complement coordinates).
    mm: Vec<Vec<(Vec<Scalar>, Vec<Scalar>)>>,
    /// Action of the k-th isotropy basis vector on the complement.
    isotropy: Vec<Vec<Vec<Scalar>>>,
}

impl HomogeneousModel {
    pub fn new(
        g: Arc<LieAlgebra>,
        h_idx: Vec<usize>,
        m_idx: Vec<usize>,
        j: Option<Matrix>,
    ) -> Result<Self> {
        let n = g.dim();
        let mut seen = vec![false; n];
        for &i in h_idx.iter().chain(m_idx.iter()) {
            if i >= n || seen[i] {
                return Err(Error::InvalidSpan(format!(
                    "index {i} repeated or out of range for a {n}-dimensional algebra"
                )));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidSpan(
                "isotropy and complement indices must partition the basis".into(),
            ));
        }
        let coord = |full: &[Poly], idx: &[usize]| -> Result<Vec<Scalar>> {
            idx.iter()
                .map(|&i| full[i].expect_scalar("structure constant"))
                .collect()
        };
        // The isotropy span must be bracket-closed.
        for &i in &h_idx {
            for &k in &h_idx {
                let leak = coord(g.bracket(i, k), &m_idx)?;
                if leak.iter().any(|s| !s.is_zero()) {
                    return Err(Error::InvalidSpan(format!(
                        "[{}, {}] leaves the declared isotropy span",
                        g.basis()[i],
                        g.basis()[k]
                    )));
                }
            }
        }
        let m_dim = m_idx.len();
        let mut mm = Vec::with_capacity(m_dim);
        for &a in &m_idx {
            let mut row = Vec::with_capacity(m_dim);
            for &b in &m_idx {
                let full = g.bracket(a, b);
                row.push((coord(full, &h_idx)?, coord(full, &m_idx)?));
            }
            mm.push(row);
        }
        let mut isotropy = Vec::with_capacity(h_idx.len());
        for &k in &h_idx {
            let mut rows = vec![vec![Scalar::zero(); m_dim]; m_dim];
            for (col, &a) in m_idx.iter().enumerate() {
                let action = coord(g.bracket(k, a), &m_idx)?;
                for (r, val) in action.into_iter().enumerate() {
                    rows[r][col] = val;
                }
            }
            isotropy.push(rows);
        }
        if let Some(j) = &j {
            if j.rows() != m_dim || j.cols() != m_dim {
                return Err(Error::DimensionMismatch(format!(
                    "J is {}×{} on a {m_dim}-dimensional complement",
                    j.rows(),
                    j.cols()
                )));
            }
            if !(j * j).sub(&identity(m_dim)).is_zero() {
                return Err(Error::Degenerate("J is not an involution".into()));
            }
            if !j.trace().is_zero() {
                return Err(Error::Degenerate(
                    "J must be trace-free so the eigenspaces split evenly".into(),
                ));
            }
        }
        Ok(HomogeneousModel {
            g,
            h_idx,
            m_idx,
            j,
            mm,
            isotropy,
        })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.g
    }

    pub fn h_indices(&self) -> &[usize] {
        &self.h_idx
    }

    pub fn m_indices(&self) -> &[usize] {
        &self.m_idx
    }

    pub fn m_dim(&self) -> usize {
        self.m_idx.len()
    }

    pub fn j(&self) -> Option<&Matrix> {
        self.j.as_ref()
    }

    fn j_required(&self) -> Result<&Matrix> {
        self.j.as_ref().ok_or_else(|| {
            Error::Degenerate("the model carries no almost para-complex structure".into())
        })
    }

    /// Complement projection of `[u, v]` for vectors in complement
    /// coordinates.
    pub fn bracket_m(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.m_dim();
        let mut out = vec![Scalar::zero(); n];
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                let coeff = sc_mul(ua, vb);
                for (c, val) in self.mm[a][b].1.iter().enumerate() {
                    sc_scaled_add(&mut out[c], &coeff, val);
                }
            }
        }
        out
    }

    /// Isotropy projection of `[u, v]`, in isotropy coordinates.
    pub fn bracket_h(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.h_idx.len();
        let mut out = vec![Scalar::zero(); n];
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                let coeff = sc_mul(ua, vb);
                for (c, val) in self.mm[a][b].0.iter().enumerate() {
                    sc_scaled_add(&mut out[c], &coeff, val);
                }
            }
        }
        out
    }

    /// Action of an isotropy vector (isotropy coordinates) on the complement.
    fn isotropy_action(&self, w: &[Scalar]) -> Vec<Vec<Scalar>> {
        let n = self.m_dim();
        let mut rows = vec![vec![Scalar::zero(); n]; n];
        for (k, wk) in w.iter().enumerate() {
            if wk.is_zero() {
                continue;
            }
            for (r, row) in self.isotropy[k].iter().enumerate() {
                for (c, val) in row.iter().enumerate() {
                    sc_scaled_add(&mut rows[r][c], wk, val);
                }
            }
        }
        rows
    }

    /// The ±1 eigenspace bases of `J` (echelonized, deterministic).
    pub fn eigenspaces(&self) -> Result<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)> {
        let j = self.j_required()?;
        let n = self.m_dim();
        let plus = linalg::kernel(&j.sub(&identity(n)))?;
        let minus = linalg::kernel(&j.add(&identity(n)))?;
        if plus.len() != minus.len() {
            return Err(Error::Degenerate(format!(
                "eigenspaces of dimensions {} and {} do not split evenly",
                plus.len(),
                minus.len()
            )));
        }
        Ok((plus, minus))
    }
}

/// The two curvature maps `Λ²Δ± → Δ∓` of an invariant splitting, written as
/// 3×3 matrices over the cyclic wedge bases, together with the eigenspace
/// bases they refer to.
pub struct CurvaturePair {
    pub xi_plus: Matrix,
    pub xi_minus: Matrix,
    delta_plus: Vec<Vec<Scalar>>,
    delta_minus: Vec<Vec<Scalar>>,
}

impl CurvaturePair {
    /// Assemble from explicit matrices over the standard bases; used by the
    /// symbol and prolongation tests that probe synthetic curvature data.
    pub fn from_matrices(xi_plus: Matrix, xi_minus: Matrix) -> Result<CurvaturePair> {
        for m in [&xi_plus, &xi_minus] {
            if m.rows() != 3 || m.cols() != 3 {
                return Err(Error::DimensionMismatch(
                    "curvature maps are 3×3 over the wedge bases".into(),
                ));
            }
        }
        let std3: Vec<Vec<Scalar>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|k| {
                        if k == i {
                            Scalar::one()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(CurvaturePair {
            xi_plus,
            xi_minus,
            delta_plus: std3.clone(),
            delta_minus: std3,
        })
    }

    pub fn delta_plus(&self) -> &[Vec<Scalar>] {
        &self.delta_plus
    }

    pub fn delta_minus(&self) -> &[Vec<Scalar>] {
        &self.delta_minus
    }

    pub fn invertible(&self) -> Result<bool> {
        Ok(linalg::rank(&self.xi_plus)? == 3 && linalg::rank(&self.xi_minus)? == 3)
    }
}

/// Project the complement brackets of the eigenspace bases onto the opposite
/// eigenspaces. Requires `J` to commute with the isotropy action.
pub fn curvature_maps(model: &HomogeneousModel) -> Result<CurvaturePair> {
    let j = model.j_required()?;
    if model.m_dim() != 6 {
        return Err(Error::Unsupported(
            "curvature maps are implemented for six-dimensional complements".into(),
        ));
    }
    let j_rows = scalar_rows(j)?;
    for (k, action) in model.isotropy.iter().enumerate() {
        let action_m = from_scalar_rows(action);
        if !(&action_m * j).sub(&(j * &action_m)).is_zero() {
            return Err(Error::InvalidSpan(format!(
                "isotropy vector {} does not commute with J",
                model.g.basis()[model.h_idx[k]]
            )));
        }
    }
    let _ = j_rows;
    let (plus, minus) = model.eigenspaces()?;
    if plus.len() != 3 {
        return Err(Error::Degenerate(format!(
            "expected three-dimensional eigenspaces, found {}",
            plus.len()
        )));
    }
    let change = basis_change(&plus, &minus)?;
    let xi = |basis: &[Vec<Scalar>], lower: bool| -> Result<Matrix> {
        let mut m = Matrix::zeros(3, 3);
        for (slot, (i, k)) in [(1usize, 2usize), (2, 0), (0, 1)].iter().enumerate() {
            let v = model.bracket_m(&basis[*i], &basis[*k]);
            let coords = linalg::matvec(&change, &v);
            let offset = if lower { 3 } else { 0 };
            for r in 0..3 {
                m.set(r, slot, Poly::constant(coords[offset + r].clone()));
            }
        }
        Ok(m)
    };
    Ok(CurvaturePair {
        xi_plus: xi(&plus, true)?,
        xi_minus: xi(&minus, false)?,
        delta_plus: plus,
        delta_minus: minus,
    })
}

/// Inverse of the column matrix `[Δ₊ basis | Δ₋ basis]`, as scalar rows.
fn basis_change(plus: &[Vec<Scalar>], minus: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = plus.len() + minus.len();
    let mut cols = Matrix::zeros(n, n);
    for (c, v) in plus.iter().chain(minus.iter()).enumerate() {
        for (r, val) in v.iter().enumerate() {
            cols.set(r, c, Poly::constant(val.clone()));
        }
    }
    scalar_rows(&linalg::inverse(&cols)?)
}

/// Nijenhuis tensor `N(u, v) = [Ju,Jv] − J[Ju,v] − J[u,Jv] + [u,v]` on the
/// complement, for vectors in complement coordinates.
pub fn nijenhuis(model: &HomogeneousModel, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
    let j = scalar_rows(model.j_required()?)?;
    let ju = linalg::matvec(&j, u);
    let jv = linalg::matvec(&j, v);
    let mut out = model.bracket_m(&ju, &jv);
    let t1 = linalg::matvec(&j, &model.bracket_m(&ju, v));
    let t2 = linalg::matvec(&j, &model.bracket_m(u, &jv));
    let t3 = model.bracket_m(u, v);
    for c in 0..out.len() {
        out[c] -= &t1[c];
        out[c] -= &t2[c];
        out[c] += &t3[c];
    }
    Ok(out)
}

/// All Nijenhuis values on basis pairs, one row per pair `a < b`; the
/// tensor is surjective exactly when this matrix has full column rank.
pub fn nijenhuis_matrix(model: &HomogeneousModel) -> Result<Matrix> {
    let n = model.m_dim();
    let basis: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    if k == i {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let val = nijenhuis(model, &basis[a], &basis[b])?;
            rows.push(val.into_iter().map(Poly::constant).collect());
        }
    }
    Matrix::from_rows(rows)
}

/// Both curvature maps invertible: the splitting's defining nondegeneracy.
pub fn is_nondegenerate(model: &HomogeneousModel) -> Result<bool> {
    curvature_maps(model)?.invertible()
}

/// One element of the symbol algebra: a pair of endomorphisms of the two
/// eigenspaces.
#[derive(Clone)]
pub struct SymbolElement {
    pub on_plus: Matrix,
    pub on_minus: Matrix,
}

/// Kernel of the derivation condition
/// `Ξ±(f ξ, η) + Ξ±(ξ, f η) = f Ξ±(ξ, η)` over pairs
/// `f = (f₊, f₋) ∈ gl(Δ₊) ⊕ gl(Δ₋)`.
pub fn symbol_g1(xi: &CurvaturePair) -> Result<Vec<SymbolElement>> {
    let bp = bilinear_table(&xi.xi_plus)?;
    let bm = bilinear_table(&xi.xi_minus)?;
    // Unknown layout: f₊ row-major in 0..9, f₋ row-major in 9..18.
    let idx = |plus: bool, r: usize, c: usize| if plus { 3 * r + c } else { 9 + 3 * r + c };
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    for (inner_plus, table) in [(true, &bp), (false, &bm)] {
        for (i, k) in [(0usize, 1usize), (0, 2), (1, 2)] {
            for c in 0..3 {
                let mut row = vec![Scalar::zero(); 18];
                for l in 0..3 {
                    row[idx(inner_plus, l, i)] += &table[l][k][c];
                    row[idx(inner_plus, l, k)] += &table[i][l][c];
                }
                for d in 0..3 {
                    row[idx(!inner_plus, c, d)] -= &table[i][k][d];
                }
                rows.push(row.into_iter().map(Poly::constant).collect());
            }
        }
    }
    let kernel = linalg::kernel(&Matrix::from_rows(rows)?)?;
    Ok(kernel
        .into_iter()
        .map(|v| SymbolElement {
            on_plus: matrix3_from(&v[..9]),
            on_minus: matrix3_from(&v[9..]),
        })
        .collect())
}

fn matrix3_from(entries: &[Scalar]) -> Matrix {
    let mut m = Matrix::zeros(3, 3);
    for r in 0..3 {
        for c in 0..3 {
            m.set(r, c, Poly::constant(entries[3 * r + c].clone()));
        }
    }
    m
}

/// `B(p_i, p_j)` values of a curvature map, indexed by eigenspace basis
/// pairs, each a coordinate vector in the opposite eigenspace.
fn bilinear_table(xi: &Matrix) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let cols = scalar_rows(xi)?;
    let col = |w: usize| -> Vec<Scalar> { (0..3).map(|r| cols[r][w].clone()).collect() };
    let mut table = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            if let Some((slot, sign)) = wedge_slot(i, j) {
                let mut v = col(slot);
                if sign < 0 {
                    for x in &mut v {
                        *x = -&*x;
                    }
                }
                table[i][j] = v;
            }
        }
    }
    Ok(table)
}

/// Intersect a symbol basis with the volume-preserving (trace-free)
/// conditions on both factors.
pub fn volume_reduce_symbol(basis: &[SymbolElement]) -> Result<Vec<SymbolElement>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let rows = vec![
        basis
            .iter()
            .map(|e| e.on_plus.trace())
            .collect::<Vec<Poly>>(),
        basis.iter().map(|e| e.on_minus.trace()).collect(),
    ];
    let combos = linalg::kernel(&Matrix::from_rows(rows)?)?;
    Ok(combos
        .into_iter()
        .map(|c| {
            let mut plus = Matrix::zeros(3, 3);
            let mut minus = Matrix::zeros(3, 3);
            for (coeff, e) in c.iter().zip(basis) {
                if coeff.is_zero() {
                    continue;
                }
                plus = plus.add(&e.on_plus.scale(coeff));
                minus = minus.add(&e.on_minus.scale(coeff));
            }
            SymbolElement {
                on_plus: plus,
                on_minus: minus,
            }
        })
        .collect())
}

/// Dimension of the first prolongation of the symbol: symmetric extensions
/// `T` with `T(u)v = T(v)u` valued in the symbol algebra.
pub fn prolongation_g2(xi: &CurvaturePair) -> Result<usize> {
    let g1 = symbol_g1(xi)?;
    if g1.is_empty() {
        return Ok(0);
    }
    let blocks: Vec<Vec<Vec<Scalar>>> = g1
        .iter()
        .map(|e| {
            let p = scalar_rows(&e.on_plus)?;
            let m = scalar_rows(&e.on_minus)?;
            let mut rows = vec![vec![Scalar::zero(); 6]; 6];
            for r in 0..3 {
                for c in 0..3 {
                    rows[r][c] = p[r][c].clone();
                    rows[3 + r][3 + c] = m[r][c].clone();
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    let d = blocks.len();
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    for k in 0..6 {
        for l in k + 1..6 {
            for i in 0..6 {
                let mut row = vec![Scalar::zero(); 6 * d];
                for (a, block) in blocks.iter().enumerate() {
                    row[6 * a + k] += &block[i][l];
                    row[6 * a + l] -= &block[i][k];
                }
                rows.push(row.into_iter().map(Poly::constant).collect());
            }
        }
    }
    Ok(linalg::kernel(&Matrix::from_rows(rows)?)?.len())
}

/// Normal-form families of a unimodular endomorphism, keyed by eigenvalue
/// structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NijenhuisFamily {
    RealDiagonalizable,
    ComplexPair,
    Jordan2,
    Jordan3,
}

impl std::fmt::Display for NijenhuisFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NijenhuisFamily::RealDiagonalizable => "real-diagonalizable",
            NijenhuisFamily::ComplexPair => "complex-pair",
            NijenhuisFamily::Jordan2 => "jordan-2",
            NijenhuisFamily::Jordan3 => "jordan-3",
        })
    }
}

/// The two volume forms fixing `det Ψ̄₊ = 1` and the composite endomorphism
/// they normalize. The raw composites are kept exactly; the unimodular
/// representative is materialized only when the determinant has a rational
/// cube root, but classification never needs it: every test below is
/// invariant under real rescaling.
pub struct VolumeNormalization {
    pub psi_plus_raw: Matrix,
    pub psi_minus_raw: Matrix,
    pub det_plus: Scalar,
    pub det_minus: Scalar,
    /// Coefficient of the coordinate trivector: `Ω± = ω±·(p₀∧p₁∧p₂)`.
    pub omega_plus: Option<Scalar>,
    pub omega_minus: Option<Scalar>,
    /// `Ψ̄₊` with determinant one, when rational.
    pub normalized: Option<Matrix>,
}

impl VolumeNormalization {
    pub fn family(&self) -> Result<NijenhuisFamily> {
        classify_nijenhuis(&self.psi_plus_raw)
    }
}

/// Compose each curvature map twice against the other once, threading a
/// coordinate trivector through the comultiplication `Λ³ → Δ ⊗ Λ²`, and fix
/// the volume scales so the composite becomes unimodular.
pub fn volume_normalize(xi: &CurvaturePair) -> Result<VolumeNormalization> {
    if !xi.invertible()? {
        return Err(Error::Degenerate(
            "volume normalization needs both curvature maps invertible".into(),
        ));
    }
    let psi_plus_raw = psi_chain(&xi.xi_plus, &xi.xi_minus)?;
    let psi_minus_raw = psi_chain(&xi.xi_minus, &xi.xi_plus)?;
    let det_plus = det3(&scalar_rows(&psi_plus_raw)?);
    let det_minus = det3(&scalar_rows(&psi_minus_raw)?);
    let omega_plus = det_plus.cbrt_exact().map(|s| s.recip().expect("nonzero"));
    let omega_minus = det_minus.cbrt_exact().map(|s| s.recip().expect("nonzero"));
    let normalized = omega_plus.as_ref().map(|w| psi_plus_raw.scale(w));
    Ok(VolumeNormalization {
        psi_plus_raw,
        psi_minus_raw,
        det_plus,
        det_minus,
        omega_plus,
        omega_minus,
        normalized,
    })
}

/// `v ↦ Σ_cyc Ξ_out(Ξ_in(v ∧ p_i) ∧ Ξ_in(p_j ∧ p_k))` over the coordinate
/// trivector's splitting `p₀⊗(p₁∧p₂) + p₁⊗(p₂∧p₀) + p₂⊗(p₀∧p₁)`.
fn psi_chain(xi_in: &Matrix, xi_out: &Matrix) -> Result<Matrix> {
    let rows_in = scalar_rows(xi_in)?;
    let rows_out = scalar_rows(xi_out)?;
    let apply = |rows: &[Vec<Scalar>], v: &[Scalar]| linalg::matvec(rows, v);
    let col_in = |w: usize| -> Vec<Scalar> { (0..3).map(|r| rows_in[r][w].clone()).collect() };
    let mut psi = Matrix::zeros(3, 3);
    for v in 0..3 {
        let mut total = vec![Scalar::zero(); 3];
        for (i, j, k) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
            let Some((slot, sign)) = wedge_slot(v, i) else {
                continue;
            };
            let mut a = col_in(slot);
            if sign < 0 {
                for x in &mut a {
                    *x = -&*x;
                }
            }
            let b = col_in(wedge_slot(j, k).expect("cyclic pair").0);
            let term = apply(&rows_out, &wedge2(&a, &b));
            for c in 0..3 {
                total[c] += &term[c];
            }
        }
        for (r, val) in total.into_iter().enumerate() {
            psi.set(r, v, Poly::constant(val));
        }
    }
    Ok(psi)
}

/// Eigenstructure family of an invertible 3×3 rational matrix, invariant
/// under real rescaling (so the raw composite classifies identically to its
/// unimodular normalization): discriminant sign of the characteristic
/// polynomial, then minimal-polynomial shape on the discriminant-zero locus.
pub fn classify_nijenhuis(psi: &Matrix) -> Result<NijenhuisFamily> {
    let chi = linalg::char_poly(psi)?;
    if chi.coeff(0).is_zero() {
        return Err(Error::Degenerate(
            "classification needs an invertible endomorphism".into(),
        ));
    }
    let disc = chi.discriminant()?;
    if disc.is_positive() {
        return Ok(NijenhuisFamily::RealDiagonalizable);
    }
    if disc.is_negative() {
        return Ok(NijenhuisFamily::ComplexPair);
    }
    let sf = chi.squarefree_part();
    if linalg::eval_unipoly_at(&sf, psi).is_zero() {
        return Ok(NijenhuisFamily::RealDiagonalizable);
    }
    if sf.degree() == Some(2) {
        return Ok(NijenhuisFamily::Jordan2);
    }
    // Triple eigenvalue: distinguish the two nilpotent shapes.
    if linalg::eval_unipoly_at(&sf.mul(&sf), psi).is_zero() {
        Ok(NijenhuisFamily::Jordan2)
    } else {
        Ok(NijenhuisFamily::Jordan3)
    }
}

/// Basis of isotropy-invariant symmetric forms on the complement, with the
/// anti-compatibility `g(J·, J·) = −g` imposed when `J` is present. When the
/// space is a line and the curvature is invertible, the representative
/// normalized against the eigenspace pairing is attached.
pub struct InvariantMetrics {
    pub basis: Vec<Matrix>,
    pub canonical: Option<Matrix>,
}

pub fn invariant_metrics(model: &HomogeneousModel) -> Result<InvariantMetrics> {
    let n = model.m_dim();
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .collect();
    let pos = |a: usize, b: usize| -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        unknowns.iter().position(|&(x, y)| (x, y) == (a, b)).unwrap()
    };
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for action in &model.isotropy {
        for i in 0..n {
            for j in i..n {
                let mut row = vec![Scalar::zero(); unknowns.len()];
                for k in 0..n {
                    row[pos(k, j)] += &action[k][i];
                    row[pos(i, k)] += &action[k][j];
                }
                rows.push(row);
            }
        }
    }
    if let Some(j_mat) = &model.j {
        let j_rows = scalar_rows(j_mat)?;
        for i in 0..n {
            for j in i..n {
                let mut row = vec![Scalar::zero(); unknowns.len()];
                for k in 0..n {
                    if j_rows[k][i].is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        let coeff = sc_mul(&j_rows[k][i], &j_rows[l][j]);
                        row[pos(k, l)] += &coeff;
                    }
                }
                row[pos(i, j)] += &Scalar::one();
                rows.push(row);
            }
        }
    }
    let poly_rows: Vec<Vec<Poly>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(Poly::constant).collect())
        .collect();
    let kernel = linalg::kernel(&Matrix::from_rows(poly_rows)?)?;
    let basis: Vec<Matrix> = kernel
        .iter()
        .map(|v| {
            let mut m = Matrix::zeros(n, n);
            for (idx, &(a, b)) in unknowns.iter().enumerate() {
                m.set(a, b, Poly::constant(v[idx].clone()));
                if a != b {
                    m.set(b, a, Poly::constant(v[idx].clone()));
                }
            }
            m
        })
        .collect();
    let canonical = if basis.len() == 1 && model.j.is_some() {
        pairing_metric(model).ok().filter(|g| {
            // The pairing must land inside the solved line.
            let s = &basis[0];
            let mut ratio: Option<Scalar> = None;
            let mut consistent = true;
            'outer: for i in 0..n {
                for j in 0..n {
                    let (gs, ss) = (g.get(i, j), s.get(i, j));
                    match (gs.is_zero(), ss.is_zero()) {
                        (true, true) => {}
                        (false, false) => {
                            let r = &gs.expect_scalar("pairing").unwrap()
                                / &ss.expect_scalar("metric").unwrap();
                            if let Some(prev) = &ratio {
                                if *prev != r {
                                    consistent = false;
                                    break 'outer;
                                }
                            } else {
                                ratio = Some(r);
                            }
                        }
                        _ => {
                            consistent = false;
                            break 'outer;
                        }
                    }
                }
            }
            consistent && ratio.is_some()
        })
    } else {
        None
    };
    Ok(InvariantMetrics { basis, canonical })
}

/// The metric `g(u, v) = ⟨π₋u, π₊v⟩` from the duality of the eigenspaces:
/// the pairing inverts `Ξ₊` into the wedge square of `Δ₊` and reads the
/// coefficient of the coordinate trivector.
fn pairing_metric(model: &HomogeneousModel) -> Result<Matrix> {
    let xi = curvature_maps(model)?;
    let xi_inv = scalar_rows(&linalg::inverse(&xi.xi_plus)?)?;
    let change = basis_change(&xi.delta_plus, &xi.delta_minus)?;
    let n = model.m_dim();
    let mut coords = Vec::with_capacity(n);
    for a in 0..n {
        let e: Vec<Scalar> = (0..n)
            .map(|k| {
                if k == a {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        coords.push(linalg::matvec(&change, &e));
    }
    let pair = |minus: &[Scalar], plus: &[Scalar]| -> Scalar {
        let beta = linalg::matvec(&xi_inv, minus);
        linalg::dot(&beta, plus)
    };
    let half = Scalar::ratio(1, 2);
    let mut g = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let left = pair(&coords[a][3..], &coords[b][..3]);
            let right = pair(&coords[b][3..], &coords[a][..3]);
            g.set(a, b, Poly::constant(&(&left + &right) * &half));
        }
    }
    Ok(g)
}

/// A trilinear tensor on the complement with exact rational values.
#[derive(Clone, PartialEq)]
pub struct Tensor3 {
    dim: usize,
    vals: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zero(dim: usize) -> Self {
        Tensor3 {
            dim,
            vals: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.vals[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.vals[(i * self.dim + j) * self.dim + k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, k: &Scalar) -> Tensor3 {
        Tensor3 {
            dim: self.dim,
            vals: self.vals.iter().map(|v| v * k).collect(),
        }
    }

    pub fn totally_antisymmetric(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if *self.get(i, j, k) != -self.get(j, i, k).clone()
                        || *self.get(i, j, k) != -self.get(i, k, j).clone()
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Projection onto fully alternating tensors for input already
    /// antisymmetric in its last two slots: the cyclic average.
    pub fn cyclic_average(&self) -> Tensor3 {
        let n = self.dim;
        let third = Scalar::ratio(1, 3);
        let mut out = Tensor3::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut s = self.get(i, j, k).clone();
                    s += self.get(j, k, i);
                    s += self.get(k, i, j);
                    out.set(i, j, k, &s * &third);
                }
            }
        }
        out
    }
}

/// Connection endomorphisms `Λ(e_a) = ½[e_a, ·]_m + U(e_a, ·)` of the
/// Levi-Civita connection of an invariant metric, one per complement basis
/// vector.
pub fn levi_civita_maps(model: &HomogeneousModel, g: &Matrix) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let n = model.m_dim();
    let g_rows = scalar_rows(g)?;
    let g_inv = scalar_rows(&linalg::inverse(g)?)?;
    let half = Scalar::ratio(1, 2);
    let basis: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    if k == i {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut lambdas = Vec::with_capacity(n);
    for a in 0..n {
        let mut cols = Vec::with_capacity(n);
        for b in 0..n {
            // 2 g(U(a,b), e_c) = g([e_c, e_a]_m, e_b) + g(e_a, [e_c, e_b]_m)
            let mut w = vec![Scalar::zero(); n];
            for c in 0..n {
                let u1 = model.bracket_m(&basis[c], &basis[a]);
                let u2 = model.bracket_m(&basis[c], &basis[b]);
                let mut acc = Scalar::zero();
                for k in 0..n {
                    acc += &(&u1[k] * &g_rows[k][b]);
                    acc += &(&g_rows[a][k] * &u2[k]);
                }
                w[c] = &acc * &half;
            }
            let u = linalg::matvec(&g_inv, &w);
            let br = model.bracket_m(&basis[a], &basis[b]);
            let col: Vec<Scalar> = (0..n).map(|c| &(&br[c] * &half) + &u[c]).collect();
            cols.push(col);
        }
        // Reassemble column-wise into row-major form.
        let mut rows = vec![vec![Scalar::zero(); n]; n];
        for (b, col) in cols.iter().enumerate() {
            for (r, val) in col.iter().enumerate() {
                rows[r][b] = val.clone();
            }
        }
        lambdas.push(rows);
    }
    Ok(lambdas)
}

/// `(∇ω)(X, Y, Z) = −ω(Λ(X)Y, Z) − ω(Y, Λ(X)Z)` at the origin.
pub fn nabla_omega(model: &HomogeneousModel, g: &Matrix) -> Result<Tensor3> {
    let j = model.j_required()?;
    let omega = g * j;
    let w = scalar_rows(&omega)?;
    let lambdas = levi_civita_maps(model, g)?;
    let n = model.m_dim();
    let mut t = Tensor3::zero(n);
    for a in 0..n {
        let lam = &lambdas[a];
        for b in 0..n {
            for c in 0..n {
                // ω(Λ_a e_b, e_c) = Σ_k Λ_a[k][b] ω[k][c]
                let mut acc = Scalar::zero();
                for k in 0..n {
                    acc += &(&lam[k][b] * &w[k][c]);
                    acc += &(&w[b][k] * &lam[k][c]);
                }
                t.set(a, b, c, -acc);
            }
        }
    }
    Ok(t)
}

/// `dω(X, Y, Z) = −ω([X,Y]_m, Z) − ω([Y,Z]_m, X) − ω([Z,X]_m, Y)`.
pub fn d_omega(model: &HomogeneousModel, omega: &Matrix) -> Result<Tensor3> {
    let w = scalar_rows(omega)?;
    let n = model.m_dim();
    let basis: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    if k == i {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    let pair = |u: &[Scalar], x: usize| -> Scalar {
        let mut acc = Scalar::zero();
        for k in 0..n {
            acc += &(&u[k] * &w[k][x]);
        }
        acc
    };
    let mut t = Tensor3::zero(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut acc = pair(&model.bracket_m(&basis[a], &basis[b]), c);
                acc += &pair(&model.bracket_m(&basis[b], &basis[c]), a);
                acc += &pair(&model.bracket_m(&basis[c], &basis[a]), b);
                t.set(a, b, c, -acc);
            }
        }
    }
    Ok(t)
}

/// Verdict on `∇ω`: totally skew and nonzero, identically zero, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NkVerdict {
    Strict,
    NonStrict,
    No,
}

impl std::fmt::Display for NkVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NkVerdict::Strict => "strict",
            NkVerdict::NonStrict => "non-strict",
            NkVerdict::No => "no",
        })
    }
}

/// The invariant metric a model's verdicts refer to: the canonical
/// pairing-normalized representative when available, otherwise the solved
/// line's echelon representative.
pub fn preferred_metric(model: &HomogeneousModel) -> Result<Matrix> {
    let metrics = invariant_metrics(model)?;
    let g = metrics
        .canonical
        .or_else(|| metrics.basis.into_iter().next())
        .ok_or_else(|| Error::Degenerate("no invariant metric exists".into()))?;
    if linalg::rank(&g)? != model.m_dim() {
        return Err(Error::Degenerate("the invariant metric is degenerate".into()));
    }
    Ok(g)
}

pub fn is_nearly_para_kahler(model: &HomogeneousModel) -> Result<NkVerdict> {
    let g = preferred_metric(model)?;
    let t = nabla_omega(model, &g)?;
    if t.is_zero() {
        Ok(NkVerdict::NonStrict)
    } else if t.totally_antisymmetric() {
        Ok(NkVerdict::Strict)
    } else {
        Ok(NkVerdict::No)
    }
}

/// `p(∇ω) = (1/3) dω` for the model's preferred metric: the alternation of
/// the covariant derivative against the exterior derivative.
pub fn check_p_identity(model: &HomogeneousModel) -> Result<bool> {
    let g = preferred_metric(model)?;
    let omega = &g * model.j_required()?;
    let t = nabla_omega(model, &g)?;
    let d = d_omega(model, &omega)?;
    Ok(t.cyclic_average() == d.scale(&Scalar::ratio(1, 3)))
}

/// Invariant para-Hermitian package of a model: metric, fundamental form,
/// and the covariant derivative of the latter.
pub struct ParaHermitianData {
    pub metric: Matrix,
    pub omega: Matrix,
    pub nabla_omega: Tensor3,
}

pub fn para_hermitian_data(model: &HomogeneousModel) -> Result<ParaHermitianData> {
    let metric = preferred_metric(model)?;
    let omega = &metric * model.j_required()?;
    let nabla = nabla_omega(model, &metric)?;
    Ok(ParaHermitianData {
        metric,
        omega,
        nabla_omega: nabla,
    })
}

/// Trichotomy of an invariant almost para-complex structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyVerdict {
    Integrable,
    DegenerateNonintegrable,
    Nondegenerate,
}

impl std::fmt::Display for FamilyVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FamilyVerdict::Integrable => "integrable",
            FamilyVerdict::DegenerateNonintegrable => "degenerate-nonintegrable",
            FamilyVerdict::Nondegenerate => "nondegenerate",
        })
    }
}

fn family_verdict(model: &HomogeneousModel) -> Result<FamilyVerdict> {
    if nijenhuis_matrix(model)?.is_zero() {
        return Ok(FamilyVerdict::Integrable);
    }
    if is_nondegenerate(model)? {
        Ok(FamilyVerdict::Nondegenerate)
    } else {
        Ok(FamilyVerdict::DegenerateNonintegrable)
    }
}

/// Verdict for the two-parameter family `J(v, 0) = (r v, t v)`,
/// `J(0, v) = ((1−r²)/t · v, −r v)` on the product-of-rotations model.
pub fn nijenhuis_family_su2cubed(r: &Scalar, t: &Scalar) -> Result<FamilyVerdict> {
    family_verdict(&models::su2cubed(r, t)?)
}

/// Verdict for the limiting structures `J(v₁, v₂) = (±v₁ + s v₂, ∓v₂)`
/// completing the family at `t = 0`.
pub fn nijenhuis_limiting_family_su2cubed(plus: bool, s: &Scalar) -> Result<FamilyVerdict> {
    family_verdict(&models::su2cubed_limiting(plus, s)?)
}

/// Curvature `R(X,Y)Z = [Λ(X),Λ(Y)]Z − Λ([X,Y]_m)Z − [[X,Y]_h, Z]` traced
/// over its first slot.
pub fn ricci(model: &HomogeneousModel, g: &Matrix) -> Result<Matrix> {
    let n = model.m_dim();
    let lambdas = levi_civita_maps(model, g)?;
    let basis: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    if k == i {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mat_mul = |x: &Vec<Vec<Scalar>>, y: &Vec<Vec<Scalar>>| -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if x[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    sc_scaled_add(&mut out[i][j], &x[i][k], &y[k][j]);
                }
            }
        }
        out
    };
    let combine = |coords: &[Scalar], mats: &[Vec<Vec<Scalar>>]| -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); n]; n];
        for (c, m) in coords.iter().zip(mats) {
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    sc_scaled_add(&mut out[i][j], c, &m[i][j]);
                }
            }
        }
        out
    };
    let mut ric = Matrix::zeros(n, n);
    for b in 0..n {
        for c in 0..n {
            let mut acc = Scalar::zero();
            for a in 0..n {
                let br_m = model.bracket_m(&basis[a], &basis[b]);
                let br_h = model.bracket_h(&basis[a], &basis[b]);
                let first = mat_mul(&lambdas[a], &lambdas[b]);
                let second = mat_mul(&lambdas[b], &lambdas[a]);
                let third = combine(&br_m, &lambdas);
                let fourth = model.isotropy_action(&br_h);
                let val = &(&(&first[a][c] - &second[a][c]) - &third[a][c]) - &fourth[a][c];
                acc += &val;
            }
            ric.set(b, c, Poly::constant(acc));
        }
    }
    Ok(ric)
}

/// `Some(λ)` when `Ric = λ g` exactly.
pub fn is_einstein(model: &HomogeneousModel, g: &Matrix) -> Result<Option<Scalar>> {
    let ric = ricci(model, g)?;
    let n = model.m_dim();
    let mut lambda: Option<Scalar> = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let gv = g.get(i, j).expect_scalar("metric")?;
            if !gv.is_zero() {
                lambda = Some(&ric.get(i, j).expect_scalar("ricci")? / &gv);
                break 'outer;
            }
        }
    }
    let Some(lambda) = lambda else {
        return Err(Error::Degenerate("the zero metric cannot be Einstein".into()));
    };
    if ric.sub(&g.scale(&lambda)).is_zero() {
        Ok(Some(lambda))
    } else {
        Ok(None)
    }
}

fn matrix_strings(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(m.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Model description: algebra reference, span index lists, structure matrix.
pub fn model_json(model: &HomogeneousModel) -> Value {
    json!({
        "algebra": model.g.name(),
        "h": model.h_idx,
        "m": model.m_idx,
        "j": model.j.as_ref().map(matrix_strings),
    })
}

/// Geometry verdict summary for a model.
pub fn geometry_report(model: &HomogeneousModel) -> Result<Value> {
    let dims = json!({
        "g": model.g.dim(),
        "h": model.h_idx.len(),
        "m": model.m_dim(),
    });
    let (nondegenerate, family, nk) = if model.j.is_some() {
        let nd = is_nondegenerate(model)?;
        let family = if nd {
            let norm = volume_normalize(&curvature_maps(model)?)?;
            Some(norm.family()?.to_string())
        } else {
            None
        };
        (Some(nd), family, Some(is_nearly_para_kahler(model)?.to_string()))
    } else {
        (None, None, None)
    };
    let metrics = invariant_metrics(model)?;
    let g = metrics
        .canonical
        .or_else(|| {
            if metrics.basis.len() == 1 {
                Some(metrics.basis[0].clone())
            } else {
                None
            }
        })
        .or_else(|| {
            // Without a para-complex structure the solved space is not a
            // line; fall back to the bi-invariant choice, minus the Killing
            // form on the complement.
            if model.j.is_none() {
                let k = model.g.killing_form();
                let n = model.m_dim();
                let mut r = Matrix::zeros(n, n);
                for (a, &ia) in model.m_idx.iter().enumerate() {
                    for (b, &ib) in model.m_idx.iter().enumerate() {
                        r.set(a, b, k.get(ia, ib).neg());
                    }
                }
                Some(r)
            } else {
                None
            }
        });
    let (einstein, signature) = match &g {
        Some(g) if linalg::rank(g)? == model.m_dim() => {
            let sig = linalg::signature(g)?;
            (
                Value::Bool(is_einstein(model, g)?.is_some()),
                json!([sig.0, sig.1]),
            )
        }
        _ => (Value::Null, Value::Null),
    };
    Ok(json!({
        "nondegenerate": nondegenerate,
        "family": family,
        "nk_verdict": nk,
        "einstein": einstein,
        "signature": signature,
        "dims": dims,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn diag3(entries: [&str; 3]) -> Matrix {
        let mut m = Matrix::zeros(3, 3);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, Poly::parse(e).unwrap());
        }
        m
    }

    // The Killing form of the rotation algebra with cyclic brackets is −2·id
    // (each ad-square has trace −2), so the bi-invariant metric is 2·id.
    // With Λ = ½ ad, the curvature collapses to −¼ ad([X,Y]) and the trace
    // gives Ric = ¼ g. That hand value is frozen here against the general
    // pipeline.
    #[test]
    fn the_bi_invariant_rotation_metric_is_einstein_with_constant_one_quarter() {
        let model = models::su2_point().unwrap();
        let killing = model.algebra().killing_form();
        assert_eq!(killing, diag3(["-2", "-2", "-2"]));
        let g = killing.scale(&Scalar::from_int(-1));
        let ric = ricci(&model, &g).unwrap();
        assert_eq!(ric, g.scale(&Scalar::parse("1/4").unwrap()));
        assert_eq!(
            is_einstein(&model, &g).unwrap(),
            Some(Scalar::parse("1/4").unwrap())
        );
    }

    // Hand composition of the volume chain for curvature maps that are both
    // coordinate cross products (Ξ₊ = α·id, Ξ₋ = β·id): each input vector
    // picks up exactly two nonzero comultiplication terms, each contributing
    // −α²β times the vector itself. The normalization then divides the scale
    // away completely.
    #[test]
    fn the_volume_chain_on_cross_product_curvature_collapses_by_hand() {
        let alpha = Scalar::parse("5").unwrap();
        let beta = Scalar::parse("-7/3").unwrap();
        let xi = CurvaturePair::from_matrices(
            identity(3).scale(&alpha),
            identity(3).scale(&beta),
        )
        .unwrap();
        let norm = volume_normalize(&xi).unwrap();
        let scale = &(&alpha * &alpha) * &beta;
        let expected = identity(3).scale(&-&(&scale + &scale));
        assert_eq!(norm.psi_plus_raw, expected);
        assert_eq!(norm.normalized, Some(identity(3)));
        // Scale invariance: blowing up one factor leaves the normal form.
        let xi_scaled = CurvaturePair::from_matrices(
            identity(3).scale(&(&alpha * &Scalar::from_int(11))),
            identity(3).scale(&beta),
        )
        .unwrap();
        let norm_scaled = volume_normalize(&xi_scaled).unwrap();
        assert_eq!(norm_scaled.normalized, Some(identity(3)));
        assert!(det3(&scalar_rows(&norm.normalized.unwrap()).unwrap()).is_one());
    }

    // For cross-product curvature the derivation condition becomes the
    // classical identity fξ×η + ξ×fη = (tr f − fᵀ)(ξ×η), so the symbol is
    // exactly the trace-free conjugation family {(f, −fᵀ) : tr f = 0},
    // eight-dimensional.
    #[test]
    fn the_symbol_of_cross_product_curvature_is_the_traceless_conjugation_family() {
        let xi =
            CurvaturePair::from_matrices(identity(3), identity(3)).unwrap();
        let basis = symbol_g1(&xi).unwrap();
        assert_eq!(basis.len(), 8);
        for e in &basis {
            assert!(e.on_plus.trace().is_zero());
            let rows = scalar_rows(&e.on_plus).unwrap();
            let mut transpose_neg = Matrix::zeros(3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    transpose_neg.set(i, j, Poly::constant(-&rows[j][i]));
                }
            }
            assert_eq!(e.on_minus, transpose_neg);
        }
    }

    #[test]
    fn zero_curvature_constrains_nothing_and_prolongs_fully() {
        let xi =
            CurvaturePair::from_matrices(Matrix::zeros(3, 3), Matrix::zeros(3, 3)).unwrap();
        assert_eq!(symbol_g1(&xi).unwrap().len(), 18);
    }

    #[test]
    fn invertible_curvature_kills_the_prolongation() {
        let std = CurvaturePair::from_matrices(identity(3), identity(3)).unwrap();
        assert_eq!(prolongation_g2(&std).unwrap(), 0);
        let mut seen = 0;
        for v in sample::rational_vectors(11, 40, 9) {
            let m = matrix3_from(&v);
            if linalg::rank(&m).unwrap() != 3 {
                continue;
            }
            let xi = CurvaturePair::from_matrices(m, identity(3)).unwrap();
            assert_eq!(prolongation_g2(&xi).unwrap(), 0);
            let reduced = volume_reduce_symbol(&symbol_g1(&xi).unwrap()).unwrap();
            assert!(reduced.len() <= 8);
            seen += 1;
            if seen == 10 {
                break;
            }
        }
        assert!(seen >= 5, "sampling produced too few invertible matrices");
    }

    #[test]
    fn the_normal_form_examples_classify_by_eigenstructure() {
        assert_eq!(
            classify_nijenhuis(&diag3(["2", "3/2", "1/3"])).unwrap(),
            NijenhuisFamily::RealDiagonalizable
        );
        let mut rot = Matrix::zeros(3, 3);
        rot.set(0, 0, Poly::one());
        rot.set(1, 1, Poly::parse("3/5").unwrap());
        rot.set(1, 2, Poly::parse("4/5").unwrap());
        rot.set(2, 1, Poly::parse("-4/5").unwrap());
        rot.set(2, 2, Poly::parse("3/5").unwrap());
        assert_eq!(
            classify_nijenhuis(&rot).unwrap(),
            NijenhuisFamily::ComplexPair
        );
        let mut j3 = identity(3);
        j3.set(0, 1, Poly::one());
        j3.set(1, 2, Poly::one());
        assert_eq!(classify_nijenhuis(&j3).unwrap(), NijenhuisFamily::Jordan3);
        let mut j2 = identity(3);
        j2.set(1, 2, Poly::one());
        assert_eq!(classify_nijenhuis(&j2).unwrap(), NijenhuisFamily::Jordan2);
        // A double eigenvalue that stays diagonalizable is still in the first
        // family.
        assert_eq!(
            classify_nijenhuis(&diag3(["2", "2", "1/4"])).unwrap(),
            NijenhuisFamily::RealDiagonalizable
        );
    }

    fn battery(model: &HomogeneousModel) {
        // Nondegenerate with the Nijenhuis tensor surjective.
        assert!(is_nondegenerate(model).unwrap());
        assert_eq!(linalg::rank(&nijenhuis_matrix(model).unwrap()).unwrap(), 6);
        // N restricted to the eigenspaces is four times the curvature map.
        let xi = curvature_maps(model).unwrap();
        let change = basis_change(xi.delta_plus(), xi.delta_minus()).unwrap();
        let four = Scalar::from_int(4);
        for (basis, other_off, m, lower) in [
            (xi.delta_plus(), 3, &xi.xi_plus, true),
            (xi.delta_minus(), 0, &xi.xi_minus, false),
        ] {
            let rows = scalar_rows(m).unwrap();
            for (slot, (i, k)) in [(0usize, (1usize, 2usize)), (1, (2, 0)), (2, (0, 1))] {
                let n_val = nijenhuis(model, &basis[i], &basis[k]).unwrap();
                let coords = linalg::matvec(&change, &n_val);
                let own_off = if lower { 0 } else { 3 };
                for r in 0..3 {
                    assert!(coords[own_off + r].is_zero());
                    assert_eq!(coords[other_off + r], &four * &rows[r][slot]);
                }
            }
        }
        // One invariant metric line of split signature, pairing-normalized.
        let metrics = invariant_metrics(model).unwrap();
        assert_eq!(metrics.basis.len(), 1);
        let g = metrics.canonical.expect("pairing metric lands in the line");
        assert_eq!(linalg::signature(&g).unwrap(), (3, 3, 0));
        // Levi-Civita sanity: metric skewness and zero torsion.
        let lambdas = levi_civita_maps(model, &g).unwrap();
        let g_rows = scalar_rows(&g).unwrap();
        let n = model.m_dim();
        let basis: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| if k == i { Scalar::one() } else { Scalar::zero() })
                    .collect()
            })
            .collect();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut acc = Scalar::zero();
                    for k in 0..n {
                        acc += &(&lambdas[a][k][b] * &g_rows[k][c]);
                        acc += &(&g_rows[b][k] * &lambdas[a][k][c]);
                    }
                    assert!(acc.is_zero(), "Levi-Civita skewness fails");
                }
                let br = model.bracket_m(&basis[a], &basis[b]);
                for c in 0..n {
                    let lhs = &lambdas[a][c][b] - &lambdas[b][c][a];
                    assert_eq!(lhs, br[c], "torsion-free condition fails");
                }
            }
        }
        // The covariant derivative of ω alternates against dω.
        assert!(check_p_identity(model).unwrap());
    }

    #[test]
    fn the_maximal_model_is_strictly_nearly_para_kahler_of_split_signature() {
        let model = models::g2star().unwrap();
        battery(&model);
        assert_eq!(
            is_nearly_para_kahler(&model).unwrap(),
            NkVerdict::Strict
        );
        let norm = volume_normalize(&curvature_maps(&model).unwrap()).unwrap();
        assert_eq!(norm.normalized, Some(identity(3)));
    }

    #[test]
    fn the_submaximal_model_is_strictly_nearly_para_kahler_of_split_signature() {
        let model = models::sp4().unwrap();
        battery(&model);
        assert_eq!(
            is_nearly_para_kahler(&model).unwrap(),
            NkVerdict::Strict
        );
    }

    #[test]
    fn the_product_of_rotations_family_follows_the_equality_trichotomy() {
        let s = |x: &str| Scalar::parse(x).unwrap();
        assert_eq!(
            nijenhuis_family_su2cubed(&s("1"), &s("2")).unwrap(),
            FamilyVerdict::Integrable
        );
        assert_eq!(
            nijenhuis_family_su2cubed(&s("-1"), &s("-2")).unwrap(),
            FamilyVerdict::Integrable
        );
        assert_eq!(
            nijenhuis_family_su2cubed(&s("1"), &s("1/2")).unwrap(),
            FamilyVerdict::DegenerateNonintegrable
        );
        assert_eq!(
            nijenhuis_family_su2cubed(&s("0"), &s("3")).unwrap(),
            FamilyVerdict::Nondegenerate
        );
        assert!(matches!(
            nijenhuis_family_su2cubed(&s("1"), &s("0")),
            Err(Error::Degenerate(_))
        ));
        // The limiting structures integrate exactly at the two special
        // shear values.
        assert_eq!(
            nijenhuis_limiting_family_su2cubed(true, &s("0")).unwrap(),
            FamilyVerdict::Integrable
        );
        assert_eq!(
            nijenhuis_limiting_family_su2cubed(true, &s("-2")).unwrap(),
            FamilyVerdict::Integrable
        );
        assert_eq!(
            nijenhuis_limiting_family_su2cubed(false, &s("0")).unwrap(),
            FamilyVerdict::Integrable
        );
        assert_eq!(
            nijenhuis_limiting_family_su2cubed(true, &s("1")).unwrap(),
            FamilyVerdict::DegenerateNonintegrable
        );
    }

    #[test]
    fn the_nondegenerate_rotation_product_is_neither_nk_nor_einstein() {
        let s = |x: &str| Scalar::parse(x).unwrap();
        let model = models::su2cubed(&s("0"), &s("3")).unwrap();
        let metrics = invariant_metrics(&model).unwrap();
        assert_eq!(metrics.basis.len(), 1);
        assert_eq!(is_nearly_para_kahler(&model).unwrap(), NkVerdict::No);
        let g = preferred_metric(&model).unwrap();
        assert_eq!(is_einstein(&model, &g).unwrap(), None);
    }

    #[test]
    fn the_flat_model_is_einstein_with_constant_zero() {
        let model = models::flat_abelian().unwrap();
        let xi = curvature_maps(&model).unwrap();
        assert!(xi.xi_plus.is_zero() && xi.xi_minus.is_zero());
        assert!(!is_nondegenerate(&model).unwrap());
        assert_eq!(symbol_g1(&xi).unwrap().len(), 18);
        // Any nondegenerate anti-compatible metric works; the solver's space
        // contains the split pairing.
        let mut g = Matrix::zeros(6, 6);
        for i in 0..3 {
            g.set(i, 3 + i, Poly::one());
            g.set(3 + i, i, Poly::one());
        }
        assert_eq!(
            is_einstein(&model, &g).unwrap(),
            Some(Scalar::zero())
        );
    }

    #[test]
    fn reports_collect_the_headline_verdicts() {
        let s = |x: &str| Scalar::parse(x).unwrap();
        let model = models::su2cubed(&s("0"), &s("3")).unwrap();
        let report = geometry_report(&model).unwrap();
        assert_eq!(report["nondegenerate"], Value::Bool(true));
        assert_eq!(report["nk_verdict"], Value::String("no".into()));
        assert_eq!(report["einstein"], Value::Bool(false));
        assert_eq!(report["signature"], serde_json::json!([3, 3]));
        assert_eq!(report["dims"]["m"], serde_json::json!(6));
        let point = models::su2_point().unwrap();
        let report = geometry_report(&point).unwrap();
        assert_eq!(report["nondegenerate"], Value::Null);
        assert_eq!(report["einstein"], Value::Bool(true));
    }
}

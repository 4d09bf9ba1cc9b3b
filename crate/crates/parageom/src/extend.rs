//! Rebuilding a Lie algebra from a subalgebra `h`, a complement module `m`,
//! and gluing data.
//!
//! A candidate algebra `g = h ⊕ m` is described by three pieces: a cocycle
//! `φ: h → m*⊗h` twisting the module structure of `g`, and a pair of
//! two-forms `θ_m: Λ²m → m`, `θ_h: Λ²m → h` supplying the brackets of
//! complement vectors. The Jacobi identities with at least one argument in
//! `h` reduce to two solvable conditions on `(φ, θ_m, θ_h)` — a linear one
//! and a quadratic one — and [`check_extension_constraints`] decides them
//! exactly, returning the polynomial constraints on any free cocycle
//! parameters. What remains after [`reconstruct`] is precisely the Jacobi
//! identity on `Λ³m`, which [`LieAlgebra::jacobi_defect`] reports.

use crate::cohomology;
use crate::error::{Error, Result};
use crate::exact::groebner::{self, GroebnerBasis, GroebnerCaps};
use crate::exact::linalg::{self, PrereducedSystem, RowSpace};
use crate::exact::matrix::Matrix;
use crate::exact::poly::{OrderKind, Poly};
use crate::exact::scalar::Scalar;
use crate::liealg::LieAlgebra;
use crate::repthy::{self, Representation};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A cocycle `φ ∈ h*⊗m*⊗h`: one `h_dim × m_dim` matrix per basis element
/// of `h`, so `maps[i].col(a)` is `φ(x_i)(u_a)` in `h`-coordinates. Entries
/// may be polynomials in free cocycle parameters.
#[derive(Clone, Debug)]
pub struct Cocycle {
    maps: Vec<Matrix>,
}

impl Cocycle {
    pub fn new(h_dim: usize, m_dim: usize, maps: Vec<Matrix>) -> Result<Self> {
        if maps.len() != h_dim {
            return Err(Error::DimensionMismatch(format!(
                "cocycle has {} maps for a {h_dim}-dimensional algebra",
                maps.len()
            )));
        }
        for m in &maps {
            if m.rows() != h_dim || m.cols() != m_dim {
                return Err(Error::DimensionMismatch(format!(
                    "cocycle block is {}x{}, expected {h_dim}x{m_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Cocycle { maps })
    }

    pub fn zero(h_dim: usize, m_dim: usize) -> Self {
        Cocycle {
            maps: vec![Matrix::zeros(h_dim, m_dim); h_dim],
        }
    }

    pub fn map(&self, i: usize) -> &Matrix {
        &self.maps[i]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn h_dim(&self) -> usize {
        self.maps.len()
    }

    pub fn m_dim(&self) -> usize {
        self.maps.first().map_or(0, Matrix::cols)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// `φ(x)(u)` for coefficient vectors `x` over the `h`-basis and `u` over
    /// the `m`-basis; the result is in `h`-coordinates.
    pub fn apply(&self, x: &[Poly], u: &[Poly]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.h_dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let column = self.maps[i].apply(u);
            for (k, v) in column.into_iter().enumerate() {
                if !v.is_zero() {
                    out[k] = out[k].add(&xi.mul(&v));
                }
            }
        }
        out
    }

    pub fn substitute(&self, map: &BTreeMap<String, Poly>) -> Cocycle {
        Cocycle {
            maps: self.maps.iter().map(|m| m.substitute(map)).collect(),
        }
    }

    pub fn parameters(&self) -> Vec<String> {
        let mut set = std::collections::BTreeSet::new();
        for m in &self.maps {
            for p in m.parameters() {
                set.insert(p);
            }
        }
        set.into_iter().collect()
    }
}

/// An antisymmetric bilinear map `Λ²m → X` stored as full coefficient
/// vectors over the target basis.
#[derive(Clone, Debug)]
pub struct TwoForm {
    m_dim: usize,
    target_dim: usize,
    vals: Vec<Vec<Vec<Poly>>>,
}

impl TwoForm {
    pub fn zero(m_dim: usize, target_dim: usize) -> Self {
        TwoForm {
            m_dim,
            target_dim,
            vals: vec![vec![vec![Poly::zero(); target_dim]; m_dim]; m_dim],
        }
    }

    pub fn m_dim(&self) -> usize {
        self.m_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// Set the value on `(u_i, u_j)`, `i ≠ j`; the opposite order is kept
    /// antisymmetric automatically.
    pub fn set(&mut self, i: usize, j: usize, coeffs: Vec<Poly>) {
        assert_ne!(i, j, "two-form on a repeated argument");
        assert_eq!(coeffs.len(), self.target_dim, "two-form value length");
        self.vals[j][i] = coeffs.iter().map(Poly::neg).collect();
        self.vals[i][j] = coeffs;
    }

    pub fn value(&self, i: usize, j: usize) -> &[Poly] {
        &self.vals[i][j]
    }

    /// Bilinear extension to coefficient vectors over the `m`-basis.
    pub fn apply(&self, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.target_dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let factor = ui.mul(vj);
                for (k, c) in self.vals[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].add(&c.mul(&factor));
                    }
                }
            }
        }
        out
    }

    /// Coordinates in the order used by the degree-0 differential of the
    /// coefficient module `Hom(Λ²m, X)`: pair-major, target-minor, with
    /// pairs `(i<j)` sorted lexicographically.
    pub fn flatten(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for pair in repthy::sorted_subsets(self.m_dim, 2) {
            out.extend_from_slice(&self.vals[pair[0]][pair[1]]);
        }
        out
    }

    pub fn from_flat(m_dim: usize, target_dim: usize, flat: &[Poly]) -> Self {
        let pairs = repthy::sorted_subsets(m_dim, 2);
        assert_eq!(flat.len(), pairs.len() * target_dim, "flat two-form length");
        let mut form = TwoForm::zero(m_dim, target_dim);
        for (p, pair) in pairs.iter().enumerate() {
            form.set(
                pair[0],
                pair[1],
                flat[p * target_dim..(p + 1) * target_dim].to_vec(),
            );
        }
        form
    }

    pub fn from_scalar_flat(m_dim: usize, target_dim: usize, flat: &[Scalar]) -> Self {
        let lifted: Vec<Poly> = flat.iter().map(|s| Poly::constant(s.clone())).collect();
        TwoForm::from_flat(m_dim, target_dim, &lifted)
    }

    /// Read a map `Λ²m → X` off an `equivariant_maps` matrix (`X`-coords by
    /// pair index).
    pub fn from_matrix(m_dim: usize, mat: &Matrix) -> Self {
        let pairs = repthy::sorted_subsets(m_dim, 2);
        assert_eq!(mat.cols(), pairs.len(), "pair count of an equivariant map");
        let mut form = TwoForm::zero(m_dim, mat.rows());
        for (p, pair) in pairs.iter().enumerate() {
            form.set(pair[0], pair[1], mat.col(p));
        }
        form
    }

    pub fn is_zero(&self) -> bool {
        self.vals
            .iter()
            .all(|row| row.iter().all(|cell| cell.iter().all(Poly::is_zero)))
    }

    pub fn substitute(&self, map: &BTreeMap<String, Poly>) -> TwoForm {
        TwoForm {
            m_dim: self.m_dim,
            target_dim: self.target_dim,
            vals: self
                .vals
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| cell.iter().map(|p| p.substitute(map)).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// An element of `h*⊗Λ²m*⊗X`: one two-form per basis element of `h`.
#[derive(Clone, Debug)]
pub struct CochainBlock {
    pub per_h: Vec<TwoForm>,
}

impl CochainBlock {
    pub fn is_zero(&self) -> bool {
        self.per_h.iter().all(TwoForm::is_zero)
    }

    /// Coordinates in the order used by the degree-1 cochain space of the
    /// coefficient module `Hom(Λ²m, X)`: `h`-major, then the two-form order.
    pub fn flatten(&self) -> Vec<Poly> {
        self.per_h.iter().flat_map(|f| f.flatten()).collect()
    }
}

/// The full gluing package for one reconstruction.
#[derive(Clone, Debug)]
pub struct ExtensionDatum {
    pub h: Arc<LieAlgebra>,
    pub m: Representation,
    pub phi: Cocycle,
    pub theta_m: TwoForm,
    pub theta_h: TwoForm,
}

impl ExtensionDatum {
    /// Substitute family parameters in the gluing data. The algebra and
    /// module are left alone: their parameters, when present, are module
    /// parameters rather than bracket-family ones.
    pub fn substitute(&self, map: &BTreeMap<String, Poly>) -> ExtensionDatum {
        ExtensionDatum {
            h: self.h.clone(),
            m: self.m.clone(),
            phi: self.phi.substitute(map),
            theta_m: self.theta_m.substitute(map),
            theta_h: self.theta_h.substitute(map),
        }
    }
}

fn basis_vector(n: usize, i: usize) -> Vec<Poly> {
    let mut v = vec![Poly::zero(); n];
    v[i] = Poly::one();
    v
}

/// The differential of `φ` as a map-valued form on `h`:
/// `(d_h φ)(x_i, x_j) = ad(x_i)φ(x_j) − φ(x_j)ρ(x_i) − ad(x_j)φ(x_i) +
/// φ(x_i)ρ(x_j) − φ([x_i, x_j])`. Returns the labelled nonzero entries.
pub fn cocycle_defect(h: &LieAlgebra, m: &Representation, phi: &Cocycle) -> Vec<(String, Poly)> {
    let n = h.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut lhs = &(&h.ad_basis(i) * phi.map(j)) - &(phi.map(j) * m.matrix(i));
            lhs = &lhs - &(&h.ad_basis(j) * phi.map(i));
            lhs = &lhs + &(phi.map(i) * m.matrix(j));
            for (k, c) in h.bracket(i, j).iter().enumerate() {
                if !c.is_zero() {
                    lhs = &lhs - &phi.map(k).scale_poly(c);
                }
            }
            for r in 0..lhs.rows() {
                for c in 0..lhs.cols() {
                    if !lhs.get(r, c).is_zero() {
                        out.push((
                            format!(
                                "({},{}) on {} -> {}",
                                h.basis()[i],
                                h.basis()[j],
                                m.space()[c],
                                h.basis()[r]
                            ),
                            lhs.get(r, c).clone(),
                        ));
                    }
                }
            }
        }
    }
    out
}

/// The action of `h` on `g = h ⊕ m` twisted by `φ`: adjoint block, module
/// block, and `φ` in the upper-right corner. This is a representation
/// exactly when `φ` is a cocycle; otherwise the offending components of
/// `d_h φ` are reported.
pub fn twisted_module(h: &Arc<LieAlgebra>, m: &Representation, phi: &Cocycle) -> Result<Representation> {
    let nh = h.dim();
    let nm = m.dim();
    if phi.h_dim() != nh || phi.m_dim() != nm {
        return Err(Error::DimensionMismatch(format!(
            "cocycle shaped {}x{} against h-dim {nh}, m-dim {nm}",
            phi.h_dim(),
            phi.m_dim()
        )));
    }
    let defect = cocycle_defect(h, m, phi);
    if !defect.is_empty() {
        let shown: Vec<String> = defect
            .iter()
            .take(4)
            .map(|(label, value)| format!("{label}: {value}"))
            .collect();
        return Err(Error::CocycleCondition(format!(
            "{} nonzero component(s) of the cocycle differential, first: {}",
            defect.len(),
            shown.join("; ")
        )));
    }
    let mut names: Vec<String> = h.basis().to_vec();
    names.extend(m.space().iter().cloned());
    let mut mats = Vec::with_capacity(nh);
    for i in 0..nh {
        let top = h.ad_basis(i).hstack(phi.map(i))?;
        let bottom = Matrix::zeros(nm, nh).hstack(m.matrix(i))?;
        mats.push(top.vstack(&bottom)?);
    }
    Representation::new_unchecked(Arc::clone(h), names, mats)
}

/// `δφ(x)(u₁,u₂) = φ(x,u₁)·u₂ − φ(x,u₂)·u₁`, valued in `m`.
pub fn delta_op(m: &Representation, phi: &Cocycle) -> CochainBlock {
    let nm = m.dim();
    let mut per_h = Vec::with_capacity(phi.h_dim());
    for i in 0..phi.h_dim() {
        let mut form = TwoForm::zero(nm, nm);
        for a in 0..nm {
            for b in (a + 1)..nm {
                let first = m.matrix_of(&phi.map(i).col(a)).apply(&basis_vector(nm, b));
                let second = m.matrix_of(&phi.map(i).col(b)).apply(&basis_vector(nm, a));
                let value: Vec<Poly> = first
                    .iter()
                    .zip(&second)
                    .map(|(x, y)| x.sub(y))
                    .collect();
                form.set(a, b, value);
            }
        }
        per_h.push(form);
    }
    CochainBlock { per_h }
}

/// `Qφ(x)(u₁,u₂) = φ(φ(x,u₁),u₂) − φ(φ(x,u₂),u₁) − φ(x, θ_m(u₁,u₂))`,
/// valued in `h`. Meaningful when `θ_m` solves `δφ = dθ_m`.
pub fn q_op(m: &Representation, phi: &Cocycle, theta_m: &TwoForm) -> CochainBlock {
    let nm = m.dim();
    let nh = phi.h_dim();
    let mut per_h = Vec::with_capacity(nh);
    for i in 0..nh {
        let mut form = TwoForm::zero(nm, nh);
        for a in 0..nm {
            for b in (a + 1)..nm {
                let ua = basis_vector(nm, a);
                let ub = basis_vector(nm, b);
                let first = phi.apply(&phi.map(i).col(a), &ub);
                let second = phi.apply(&phi.map(i).col(b), &ua);
                let xi = basis_vector(nh, i);
                let third = phi.apply(&xi, theta_m.value(a, b));
                let value: Vec<Poly> = (0..nh)
                    .map(|k| first[k].sub(&second[k]).sub(&third[k]))
                    .collect();
                form.set(a, b, value);
            }
        }
        per_h.push(form);
    }
    CochainBlock { per_h }
}

/// `p_ν(x)(u₁,u₂) = φ(x, ν(u₁,u₂))` for an invariant `ν: Λ²m → m`.
pub fn p_nu(phi: &Cocycle, nu: &TwoForm) -> CochainBlock {
    let nm = nu.m_dim();
    let nh = phi.h_dim();
    let mut per_h = Vec::with_capacity(nh);
    for i in 0..nh {
        let mut form = TwoForm::zero(nm, nh);
        let xi = basis_vector(nh, i);
        for a in 0..nm {
            for b in (a + 1)..nm {
                form.set(a, b, phi.apply(&xi, nu.value(a, b)));
            }
        }
        per_h.push(form);
    }
    CochainBlock { per_h }
}

/// The gauge operator attached to a change of complement `σ: m → h`:
///
/// `q_σ(x)(u₁,u₂) = dσ(φ(x,u₁),u₂) − dσ(φ(x,u₂),u₁) + φ(dσ(x,u₁),u₂) −
/// φ(dσ(x,u₂),u₁) + dσ(dσ(x,u₁),u₂) − dσ(dσ(x,u₂),u₁) − φ(x,δσ(u₁,u₂)) −
/// dσ(x,θ_m(u₁,u₂)) − dσ(x,δσ(u₁,u₂))`
///
/// where `dσ(x)(u) = [x, σ(u)] − σ(x·u)` and `δσ(u₁,u₂) = σ(u₁)·u₂ −
/// σ(u₂)·u₁`. Exposed for experiments with representative choices; the
/// automated constraint check does not need it.
pub fn q_sigma(
    h: &LieAlgebra,
    m: &Representation,
    phi: &Cocycle,
    theta_m: &TwoForm,
    sigma: &Matrix,
) -> Result<CochainBlock> {
    let nh = h.dim();
    let nm = m.dim();
    if sigma.rows() != nh || sigma.cols() != nm {
        return Err(Error::DimensionMismatch(format!(
            "sigma is {}x{}, expected {nh}x{nm}",
            sigma.rows(),
            sigma.cols()
        )));
    }
    // dσ as a cocycle-shaped object: block i equals ad(x_i)σ − σρ(x_i).
    let d_sigma = Cocycle::new(
        nh,
        nm,
        (0..nh)
            .map(|i| &(&h.ad_basis(i) * sigma) - &(sigma * m.matrix(i)))
            .collect(),
    )?;
    let act = |y: &[Poly], u: &[Poly]| -> Vec<Poly> {
        // The module action of an h-coefficient vector on u.
        m.matrix_of(y).apply(u)
    };
    let mut per_h = Vec::with_capacity(nh);
    for i in 0..nh {
        let xi = basis_vector(nh, i);
        let mut form = TwoForm::zero(nm, nh);
        for a in 0..nm {
            for b in (a + 1)..nm {
                let ua = basis_vector(nm, a);
                let ub = basis_vector(nm, b);
                let phi_a = phi.map(i).col(a);
                let phi_b = phi.map(i).col(b);
                let ds_a = d_sigma.map(i).col(a);
                let ds_b = d_sigma.map(i).col(b);
                // δσ(u_a, u_b) in m-coordinates.
                let sigma_a = sigma.col(a);
                let sigma_b = sigma.col(b);
                let delta_sigma: Vec<Poly> = {
                    let first = act(&sigma_a, &ub);
                    let second = act(&sigma_b, &ua);
                    first.iter().zip(&second).map(|(x, y)| x.sub(y)).collect()
                };
                let terms = [
                    (d_sigma.apply(&phi_a, &ub), false),
                    (d_sigma.apply(&phi_b, &ua), true),
                    (phi.apply(&ds_a, &ub), false),
                    (phi.apply(&ds_b, &ua), true),
                    (d_sigma.apply(&ds_a, &ub), false),
                    (d_sigma.apply(&ds_b, &ua), true),
                    (phi.apply(&xi, &delta_sigma), true),
                    (d_sigma.apply(&xi, theta_m.value(a, b)), true),
                    (d_sigma.apply(&xi, &delta_sigma), true),
                ];
                let mut value = vec![Poly::zero(); nh];
                for (term, negate) in terms {
                    for (k, t) in term.into_iter().enumerate() {
                        value[k] = if negate { value[k].sub(&t) } else { value[k].add(&t) };
                    }
                }
                form.set(a, b, value);
            }
        }
        per_h.push(form);
    }
    Ok(CochainBlock { per_h })
}

/// Equivariant maps `Λ²m → g` for a (possibly twisted) target on `h ⊕ m`,
/// split into the part valued in `m` (horizontal) and the part valued in
/// `h` (vertical). Values are reported in full `g`-coordinates, `h` first.
pub struct BracketSpace {
    pub horizontal: Vec<TwoForm>,
    pub vertical: Vec<TwoForm>,
}

pub fn bracket_space(h: &Arc<LieAlgebra>, target: &Representation) -> Result<BracketSpace> {
    let nh = h.dim();
    let nt = target.dim();
    if nt <= nh {
        return Err(Error::DimensionMismatch(format!(
            "target dimension {nt} does not leave room for a complement to h (dim {nh})"
        )));
    }
    let nm = nt - nh;
    // The complement action is the lower-right block of the target; it is a
    // representation because h is a submodule.
    let m_rep = Representation::new_unchecked(
        Arc::clone(h),
        target.space()[nh..].to_vec(),
        (0..nh)
            .map(|i| target.matrix(i).submatrix(nh..nt, nh..nt))
            .collect(),
    )?;
    let lambda2 = m_rep.exterior(2)?;
    let adjoint = Representation::adjoint(Arc::clone(h))?;
    let pad_vertical = |mat: &Matrix| -> TwoForm {
        let mut padded = TwoForm::zero(nm, nt);
        let form = TwoForm::from_matrix(nm, mat);
        for a in 0..nm {
            for b in (a + 1)..nm {
                let mut value = form.value(a, b).to_vec();
                value.extend(std::iter::repeat_with(Poly::zero).take(nm));
                padded.set(a, b, value);
            }
        }
        padded
    };
    let vertical_mats = repthy::equivariant_maps(&lambda2, &adjoint)?;
    let twisted = (0..nh).any(|i| {
        let block = target.matrix(i).submatrix(0..nh, nh..nt);
        !block.is_zero()
    });
    if !twisted {
        let horizontal_mats = repthy::equivariant_maps(&lambda2, &m_rep)?;
        let horizontal = horizontal_mats
            .iter()
            .map(|mat| {
                let form = TwoForm::from_matrix(nm, mat);
                let mut padded = TwoForm::zero(nm, nt);
                for a in 0..nm {
                    for b in (a + 1)..nm {
                        let mut value = vec![Poly::zero(); nh];
                        value.extend_from_slice(form.value(a, b));
                        padded.set(a, b, value);
                    }
                }
                padded
            })
            .collect();
        return Ok(BracketSpace {
            horizontal,
            vertical: vertical_mats.iter().map(pad_vertical).collect(),
        });
    }
    // Twisted target: vertical maps still land in the h-submodule; the
    // horizontal ones are total invariants reduced modulo the vertical span.
    let total = repthy::equivariant_maps(&lambda2, target)?;
    let flat = |form: &TwoForm| -> Result<Vec<Scalar>> {
        form.flatten()
            .iter()
            .map(|p| p.expect_scalar("equivariant bracket basis"))
            .collect()
    };
    let vertical: Vec<TwoForm> = vertical_mats.iter().map(pad_vertical).collect();
    let mut span = RowSpace::new(vertical.iter().map(&flat).collect::<Result<_>>()?);
    let mut horizontal = Vec::new();
    for mat in &total {
        let form = TwoForm::from_matrix(nm, mat);
        let coords = flat(&form)?;
        let reduced = span.reduce(&coords);
        if reduced.iter().any(|s| !s.is_zero()) {
            horizontal.push(TwoForm::from_scalar_flat(nm, nt, &reduced));
            let mut rows = span.basis().to_vec();
            rows.push(reduced);
            span = RowSpace::new(rows);
        }
    }
    Ok(BracketSpace { horizontal, vertical })
}

/// Outcome of the two solvability conditions for a cocycle `φ` with free
/// parameters.
pub struct ExtensionVerdict {
    /// Linear conditions on the cocycle parameters required to solve
    /// `δφ = dθ_m`, exactly as generated.
    pub linear_constraints: Vec<Poly>,
    /// The parameter bindings that solve those conditions (substituted into
    /// `φ` before the second step).
    pub eliminated: BTreeMap<String, Poly>,
    /// One solution of `δφ = dθ_m` for the reduced cocycle, polynomial in
    /// the surviving parameters.
    pub theta_m_particular: TwoForm,
    /// The solution set of the homogeneous system: all invariant
    /// `ν: Λ²m → m`.
    pub theta_m_kernel: Vec<TwoForm>,
    /// Generators of the residual ideal on the surviving parameters from
    /// the quadratic condition.
    pub residual: Vec<Poly>,
    /// Whether some parameter values satisfy both conditions.
    pub satisfiable: bool,
}

/// Express the solution set of a list of affine-linear polynomials as a
/// substitution map pivot-variable → combination of free variables.
fn solve_linear_constraints(constraints: &[Poly]) -> Result<Option<BTreeMap<String, Poly>>> {
    let mut vars = std::collections::BTreeSet::new();
    for c in constraints {
        if c.total_degree() > 1 {
            return Err(Error::Unsupported(
                "nonlinear constraint from the linear solvability step".into(),
            ));
        }
        for v in c.vars() {
            vars.insert(v.clone());
        }
    }
    let vars: Vec<String> = vars.into_iter().collect();
    let ncols = vars.len();
    let mut rows = Vec::new();
    for c in constraints {
        // Row: coefficients per variable, then the constant term.
        let mut row = vec![Scalar::zero(); ncols + 1];
        for (exps, coeff) in c.terms() {
            match exps.iter().position(|&e| e > 0) {
                Some(local) => {
                    let name = &c.vars()[local];
                    let k = vars.iter().position(|v| v == name).unwrap();
                    row[k] = coeff.clone();
                }
                None => row[ncols] = coeff.clone(),
            }
        }
        rows.push(row);
    }
    let elim = linalg::eliminate(rows, false);
    let mut bindings = BTreeMap::new();
    for (row, &pivot) in elim.rows.iter().zip(&elim.pivots) {
        if pivot == ncols {
            // 0 = nonzero constant: no parameter values work.
            return Ok(None);
        }
        let mut value = Poly::constant(row[ncols].clone()).neg();
        for (k, coeff) in row.iter().take(ncols).enumerate() {
            if k != pivot && !coeff.is_zero() {
                value = value.sub(&Poly::var(&vars[k]).mul(&Poly::constant(coeff.clone())));
            }
        }
        bindings.insert(vars[pivot].clone(), value);
    }
    Ok(Some(bindings))
}

/// Decide the two extension conditions for `(h, m, φ)`.
///
/// Step one solves the linear system `δφ = dθ_m`, producing linear
/// conditions on the cocycle parameters. Those are solved and substituted.
/// Step two asks whether `Qφ = dθ_h + p_ν` admits a solution over `(θ_h, ν)`
/// with `ν` invariant; eliminating the finite-dimensional unknowns leaves a
/// polynomial residual ideal on the surviving cocycle parameters.
pub fn check_extension_constraints(
    h: &Arc<LieAlgebra>,
    m: &Representation,
    phi: &Cocycle,
) -> Result<ExtensionVerdict> {
    let nm = m.dim();
    let defect = cocycle_defect(h, m, phi);
    if !defect.is_empty() {
        return Err(Error::CocycleCondition(format!(
            "not a cocycle: {} nonzero differential component(s), first at {}",
            defect.len(),
            defect[0].0
        )));
    }
    let lambda2 = m.exterior(2)?;
    let w_m = lambda2.hom(m)?;
    let d0_m = cohomology::d_matrix(&w_m, 0);
    let sys_m = PrereducedSystem::new(&d0_m)?;
    let rhs = delta_op(m, phi).flatten();
    let first = sys_m.solve_parametric(&rhs)?;

    let unsat = |constraints: Vec<Poly>| ExtensionVerdict {
        linear_constraints: constraints,
        eliminated: BTreeMap::new(),
        theta_m_particular: TwoForm::zero(nm, nm),
        theta_m_kernel: Vec::new(),
        residual: vec![Poly::one()],
        satisfiable: false,
    };

    let Some(eliminated) = solve_linear_constraints(&first.constraints)? else {
        return Ok(unsat(first.constraints));
    };
    let phi_hat = phi.substitute(&eliminated);
    let rhs_hat = delta_op(m, &phi_hat).flatten();
    let solved = sys_m.solve_parametric(&rhs_hat)?;
    debug_assert!(solved.constraints.is_empty(), "constraints survived substitution");
    let theta_m_particular = TwoForm::from_flat(nm, nm, &solved.particular);
    let theta_m_kernel: Vec<TwoForm> = solved
        .kernel
        .iter()
        .map(|v| TwoForm::from_scalar_flat(nm, nm, v))
        .collect();

    // Quadratic step: Qφ = dθ_h + p_ν over (θ_h, ν).
    let adjoint = Representation::adjoint(Arc::clone(h))?;
    let w_h = lambda2.hom(&adjoint)?;
    let d0_h = cohomology::d_matrix(&w_h, 0);
    let sys_h = PrereducedSystem::new(&d0_h)?;
    let q = q_op(m, &phi_hat, &theta_m_particular).flatten();
    let p_cols: Vec<Vec<Poly>> = theta_m_kernel
        .iter()
        .map(|nu| p_nu(&phi_hat, nu).flatten())
        .collect();
    let z_names: Vec<String> = (0..p_cols.len()).map(|j| format!("nu{j}")).collect();
    let mut rows = Vec::new();
    for y in sys_h.left_null_rows() {
        let mut g = linalg::poly_dot(y, &q).neg();
        for (j, col) in p_cols.iter().enumerate() {
            let coeff = linalg::poly_dot(y, col);
            if !coeff.is_zero() {
                g = g.add(&Poly::var(&z_names[j]).mul(&coeff));
            }
        }
        if !g.is_zero() {
            rows.push(g);
        }
    }
    if rows.is_empty() {
        return Ok(ExtensionVerdict {
            linear_constraints: first.constraints,
            eliminated,
            theta_m_particular,
            theta_m_kernel,
            residual: Vec::new(),
            satisfiable: true,
        });
    }
    let params: Vec<String> = phi_hat.parameters();
    let compressed = groebner::compress_generators(&rows);
    let mut priority: Vec<&str> = z_names.iter().map(String::as_str).collect();
    priority.extend(params.iter().map(String::as_str));
    let gb = GroebnerBasis::with_order(&compressed, OrderKind::Lex, &priority, GroebnerCaps::from_env())?;
    if gb.is_unit_ideal() {
        return Ok(ExtensionVerdict {
            linear_constraints: first.constraints,
            eliminated,
            theta_m_particular,
            theta_m_kernel,
            residual: vec![Poly::one()],
            satisfiable: false,
        });
    }
    let keep: Vec<&str> = params.iter().map(String::as_str).collect();
    let residual = gb.restricted_to(&keep);
    let satisfiable = !residual.iter().any(|p| p.is_constant() && !p.is_zero());
    Ok(ExtensionVerdict {
        linear_constraints: first.constraints,
        eliminated,
        theta_m_particular,
        theta_m_kernel,
        residual,
        satisfiable,
    })
}

/// Assemble the full bracket table on `h ⊕ m` from a gluing package. The
/// result satisfies every Jacobi identity with an argument in `h` whenever
/// the package passes [`check_extension_constraints`]; the identities on
/// `Λ³m` remain as the polynomial content of `jacobi_defect`.
pub fn reconstruct(datum: &ExtensionDatum, name: &str) -> Result<LieAlgebra> {
    let nh = datum.h.dim();
    let nm = datum.m.dim();
    let n = nh + nm;
    if datum.theta_m.m_dim() != nm
        || datum.theta_m.target_dim() != nm
        || datum.theta_h.m_dim() != nm
        || datum.theta_h.target_dim() != nh
    {
        return Err(Error::DimensionMismatch(
            "theta blocks do not match the complement dimension".into(),
        ));
    }
    let mut names: Vec<String> = datum.h.basis().to_vec();
    names.extend(datum.m.space().iter().cloned());
    {
        let mut seen = std::collections::BTreeSet::new();
        for b in &names {
            if !seen.insert(b) {
                return Err(Error::Parse(format!(
                    "basis name `{b}` appears in both h and m"
                )));
            }
        }
    }
    let mut upper = Vec::new();
    for i in 0..nh {
        for j in (i + 1)..nh {
            let mut coeffs = datum.h.bracket(i, j).to_vec();
            coeffs.resize(n, Poly::zero());
            upper.push(((i, j), coeffs));
        }
    }
    for i in 0..nh {
        for a in 0..nm {
            let mut coeffs = datum.phi.map(i).col(a);
            coeffs.extend(datum.m.matrix(i).col(a));
            upper.push(((i, nh + a), coeffs));
        }
    }
    for a in 0..nm {
        for b in (a + 1)..nm {
            let mut coeffs = datum.theta_h.value(a, b).to_vec();
            coeffs.extend_from_slice(datum.theta_m.value(a, b));
            upper.push(((nh + a, nh + b), coeffs));
        }
    }
    LieAlgebra::from_table(name, names, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn sl2() -> Arc<LieAlgebra> {
        Arc::new(
            LieAlgebra::from_bracket_rules(
                "sl2",
                &["h", "e", "f"],
                &[("h", "e", "2*e"), ("h", "f", "-2*f"), ("e", "f", "h")],
            )
            .unwrap(),
        )
    }

    fn adjoint_copy(g: &Arc<LieAlgebra>) -> Representation {
        let mats: Vec<Matrix> = (0..g.dim()).map(|i| g.ad_basis(i)).collect();
        let names: Vec<String> = g.basis().iter().map(|b| format!("m_{b}")).collect();
        Representation::new(Arc::clone(g), names, mats).unwrap()
    }

    #[test]
    fn flatten_agrees_with_the_cochain_differential() {
        // dθ computed by the defining formula must match the degree-0
        // differential of Hom(Λ²m, m) applied to the flattened form.
        let g = sl2();
        let m = adjoint_copy(&g);
        let lambda2 = m.exterior(2).unwrap();
        let w = lambda2.hom(&m).unwrap();
        let d0 = cohomology::d_matrix(&w, 0);
        let mut theta = TwoForm::zero(3, 3);
        let entries = sample::rational_vectors(11, 3, 3);
        theta.set(0, 1, entries[0].iter().map(|s| Poly::constant(s.clone())).collect());
        theta.set(0, 2, entries[1].iter().map(|s| Poly::constant(s.clone())).collect());
        theta.set(1, 2, entries[2].iter().map(|s| Poly::constant(s.clone())).collect());
        // Direct formula: (dθ)(x)(u,v) = x·θ(u,v) − θ(x·u,v) − θ(u,x·v).
        let nm = 3;
        let mut direct = Vec::new();
        for i in 0..g.dim() {
            let mut form = TwoForm::zero(nm, nm);
            for a in 0..nm {
                for b in (a + 1)..nm {
                    let ua = basis_vector(nm, a);
                    let ub = basis_vector(nm, b);
                    let xa = m.matrix(i).apply(&ua);
                    let xb = m.matrix(i).apply(&ub);
                    let mut value = m.matrix(i).apply(theta.value(a, b));
                    let t1 = theta.apply(&xa, &ub);
                    let t2 = theta.apply(&ua, &xb);
                    for k in 0..nm {
                        value[k] = value[k].sub(&t1[k]).sub(&t2[k]);
                    }
                    form.set(a, b, value);
                }
            }
            direct.push(form);
        }
        let lhs = CochainBlock { per_h: direct }.flatten();
        let rhs = d0.apply(&theta.flatten());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_module_with_zero_cocycle_is_the_direct_sum() {
        let g = sl2();
        let m = adjoint_copy(&g);
        let rep = twisted_module(&g, &m, &Cocycle::zero(3, 3)).unwrap();
        assert_eq!(rep.dim(), 6);
        for i in 0..3 {
            assert_eq!(rep.matrix(i).submatrix(0..3, 0..3), g.ad_basis(i));
            assert_eq!(rep.matrix(i).submatrix(3..6, 3..6), *m.matrix(i));
            assert!(rep.matrix(i).submatrix(0..3, 3..6).is_zero());
        }
    }

    #[test]
    fn coboundaries_are_cocycles_and_junk_is_not() {
        let g = sl2();
        let m = adjoint_copy(&g);
        // φ = dσ is automatically a cocycle, for any σ: m → h.
        let sigma = Matrix::from_int_rows(&[&[1, 2, 0], &[0, -1, 3], &[5, 0, 1]]);
        let d_sigma = Cocycle::new(
            3,
            3,
            (0..3)
                .map(|i| &(&g.ad_basis(i) * &sigma) - &(&sigma * m.matrix(i)))
                .collect(),
        )
        .unwrap();
        assert!(cocycle_defect(&g, &m, &d_sigma).is_empty());
        let rep = twisted_module(&g, &m, &d_sigma).unwrap();
        // The checked constructor agrees that this is a representation.
        Representation::new(
            Arc::clone(&g),
            rep.space().to_vec(),
            rep.matrices().to_vec(),
        )
        .unwrap();

        let mut bad = Cocycle::zero(3, 3);
        bad.maps[0].set(0, 0, Poly::one());
        match twisted_module(&g, &m, &bad) {
            Err(Error::CocycleCondition(msg)) => {
                assert!(msg.contains("nonzero component"), "got: {msg}");
            }
            other => panic!("expected a cocycle-condition error, got {other:?}"),
        }
    }

    #[test]
    fn zero_inputs_give_zero_operators() {
        let g = sl2();
        let m = adjoint_copy(&g);
        let phi = Cocycle::zero(3, 3);
        let theta = TwoForm::zero(3, 3);
        assert!(delta_op(&m, &phi).is_zero());
        assert!(q_op(&m, &phi, &theta).is_zero());
        let mut nu = TwoForm::zero(3, 3);
        nu.set(0, 1, vec![Poly::one(), Poly::zero(), Poly::zero()]);
        assert!(p_nu(&phi, &nu).is_zero());
        let qs = q_sigma(&g, &m, &phi, &theta, &Matrix::zeros(3, 3)).unwrap();
        assert!(qs.is_zero());
    }

    #[test]
    fn semisimple_case_is_satisfiable_with_equivariant_thetas() {
        let g = sl2();
        let m = adjoint_copy(&g);
        let verdict = check_extension_constraints(&g, &m, &Cocycle::zero(3, 3)).unwrap();
        assert!(verdict.satisfiable);
        assert!(verdict.linear_constraints.is_empty());
        assert!(verdict.residual.is_empty());
        // For the adjoint complement the invariant two-forms are spanned by
        // the bracket itself.
        assert_eq!(verdict.theta_m_kernel.len(), 1);
    }

    #[test]
    fn reconstruction_of_a_loop_style_family_stays_jacobi_flat() {
        // g = sl2 ⊗ R[ε]/(ε² − t·ε − s): both brackets of complement
        // vectors are multiples of the sl2 bracket, and the Jacobi identity
        // holds for every (s, t).
        let g = sl2();
        let m = adjoint_copy(&g);
        let mut theta_m = TwoForm::zero(3, 3);
        let mut theta_h = TwoForm::zero(3, 3);
        let bracket_val = |i: usize, j: usize| -> Vec<Poly> { g.bracket(i, j).to_vec() };
        for i in 0..3 {
            for j in (i + 1)..3 {
                let t = Poly::var("t");
                let s = Poly::var("s");
                theta_m.set(i, j, bracket_val(i, j).iter().map(|c| c.mul(&t)).collect());
                theta_h.set(i, j, bracket_val(i, j).iter().map(|c| c.mul(&s)).collect());
            }
        }
        let datum = ExtensionDatum {
            h: Arc::clone(&g),
            m: m.clone(),
            phi: Cocycle::zero(3, 3),
            theta_m,
            theta_h,
        };
        let fam = reconstruct(&datum, "loop-family").unwrap();
        assert_eq!(fam.dim(), 6);
        assert!(fam.is_lie_algebra(), "family fails Jacobi: {:?}", fam.jacobi_defect());
        // Restricting the brackets reproduces the inputs exactly.
        assert_eq!(fam.bracket(0, 1)[..3], g.bracket(0, 1)[..]);
        assert_eq!(fam.bracket(0, 4)[3..], g.ad_basis(0).col(1)[..]);
    }

    #[test]
    fn bracket_space_of_the_doubled_adjoint_splits_two_and_two() {
        // Hom(Λ²sl2, sl2) is one-dimensional (the bracket), so both the
        // horizontal and the vertical side see exactly it.
        let g = sl2();
        let m = adjoint_copy(&g);
        let target = twisted_module(&g, &m, &Cocycle::zero(3, 3)).unwrap();
        let space = bracket_space(&g, &target).unwrap();
        assert_eq!(space.horizontal.len(), 1);
        assert_eq!(space.vertical.len(), 1);
        let h_form = &space.horizontal[0];
        // Horizontal values live in the complement slots.
        for a in 0..3 {
            for b in (a + 1)..3 {
                assert!(h_form.value(a, b)[..3].iter().all(Poly::is_zero));
            }
        }
    }

    #[test]
    fn nilpotent_line_action_walks_both_steps() {
        // h = R·t acting on m = R² by a nilpotent Jordan block; the class
        // space is one-dimensional and the constraints stay satisfiable.
        let h = Arc::new(
            LieAlgebra::from_bracket_rules("line", &["t"], &[]).unwrap(),
        );
        let m = Representation::new(
            Arc::clone(&h),
            vec!["u1".into(), "u2".into()],
            vec![Matrix::from_int_rows(&[&[0, 1], &[0, 0]])],
        )
        .unwrap();
        let mut phi = Cocycle::zero(1, 2);
        phi.maps[0].set(0, 0, Poly::var("c"));
        assert!(cocycle_defect(&h, &m, &phi).is_empty());
        let verdict = check_extension_constraints(&h, &m, &phi).unwrap();
        assert!(verdict.satisfiable);
        assert!(verdict.linear_constraints.is_empty());
        assert!(verdict.residual.is_empty());
    }
}

//! Representations and the functors that build new ones: duals, tensor and
//! exterior powers, symmetric squares, hom spaces, restrictions, sums.
//!
//! `Representation::new` verifies the homomorphism property exactly, entry
//! by entry, so a typo in a matrix realization fails loudly at construction.
//! The functor outputs use the unchecked constructor: they are
//! representations by construction, and re-verifying tensor products of
//! parametric matrices gets expensive fast.

use crate::error::{Error, Result};
use crate::exact::groebner::{GroebnerBasis, GroebnerCaps};
use crate::exact::linalg::{self, AffineOutcome, PrereducedSystem};
use crate::exact::matrix::Matrix;
use crate::exact::poly::Poly;
use crate::exact::scalar::Scalar;
use crate::exact::unipoly::UniPoly;
use crate::liealg::LieAlgebra;
use num::bigint::BigInt;
use num::{Signed, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<LieAlgebra>,
    space: Vec<String>,
    mats: Vec<Matrix>,
}

impl Representation {
    /// Checked constructor: requires `rho([x,y]) = [rho(x), rho(y)]` for all
    /// basis pairs, exactly (parametric entries included).
    pub fn new(algebra: Arc<LieAlgebra>, space: Vec<String>, mats: Vec<Matrix>) -> Result<Self> {
        let rep = Representation::new_unchecked(algebra, space, mats)?;
        let n = rep.algebra.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = rep.mats[i].commutator(&rep.mats[j]);
                let mut rhs = Matrix::zeros(rep.dim(), rep.dim());
                for (k, c) in rep.algebra.bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        rhs = &rhs + &rep.mats[k].scale_poly(c);
                    }
                }
                if lhs != rhs {
                    return Err(Error::NotRepresentation(format!(
                        "[{}, {}] is not matched by the matrices",
                        rep.algebra.basis()[i],
                        rep.algebra.basis()[j]
                    )));
                }
            }
        }
        Ok(rep)
    }

    /// Shape-checked only; for functor outputs and evaluations that are
    /// representations by construction.
    pub fn new_unchecked(algebra: Arc<LieAlgebra>, space: Vec<String>, mats: Vec<Matrix>) -> Result<Self> {
        if mats.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for a {}-dimensional algebra",
                mats.len(),
                algebra.dim()
            )));
        }
        let d = space.len();
        for m in &mats {
            if m.rows() != d || m.cols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "matrix is {}x{} on a {d}-dimensional space",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { algebra, space, mats })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    pub fn space(&self) -> &[String] {
        &self.space
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.mats[i]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    /// Matrix of the action of `x` given by coefficients over the algebra
    /// basis.
    pub fn matrix_of(&self, x: &[Poly]) -> Matrix {
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &self.mats[i].scale_poly(c);
            }
        }
        acc
    }

    /// The trivial action on a space with the given coordinate names.
    pub fn trivial(algebra: Arc<LieAlgebra>, space: Vec<String>) -> Self {
        let d = space.len();
        let mats = vec![Matrix::zeros(d, d); algebra.dim()];
        Representation { algebra, space, mats }
    }

    /// Adjoint action on the algebra itself. Checked, because this is only
    /// a representation when the Jacobi identity holds.
    pub fn adjoint(algebra: Arc<LieAlgebra>) -> Result<Self> {
        let mats: Vec<Matrix> = (0..algebra.dim()).map(|i| algebra.ad_basis(i)).collect();
        let space = algebra.basis().to_vec();
        Representation::new(algebra, space, mats)
    }

    pub fn dual(&self) -> Self {
        Representation {
            algebra: self.algebra.clone(),
            space: self.space.iter().map(|s| format!("{s}*")).collect(),
            mats: self.mats.iter().map(|m| -&m.transpose()).collect(),
        }
    }

    pub fn tensor(&self, other: &Representation) -> Result<Self> {
        self.same_algebra(other)?;
        let (dv, dw) = (self.dim(), other.dim());
        let iv = Matrix::identity(dv);
        let iw = Matrix::identity(dw);
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| &a.kron(&iw) + &iv.kron(b))
            .collect();
        let mut space = Vec::with_capacity(dv * dw);
        for a in &self.space {
            for b in &other.space {
                space.push(format!("{a}⊗{b}"));
            }
        }
        Ok(Representation {
            algebra: self.algebra.clone(),
            space,
            mats,
        })
    }

    /// Hom(V, W) with the usual action `x . f = rho_W(x) f - f rho_V(x)`,
    /// realized as `V* ⊗ W`.
    pub fn hom(&self, other: &Representation) -> Result<Self> {
        self.dual().tensor(other)
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Self> {
        self.same_algebra(other)?;
        let (dv, dw) = (self.dim(), other.dim());
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                Matrix::block2(a, &Matrix::zeros(dv, dw), &Matrix::zeros(dw, dv), b)
                    .expect("block shapes agree")
            })
            .collect();
        let mut space = self.space.clone();
        space.extend(other.space.iter().cloned());
        Ok(Representation {
            algebra: self.algebra.clone(),
            space,
            mats,
        })
    }

    /// k-th exterior power (k = 2 and 3 are what the geometry needs).
    pub fn exterior(&self, k: usize) -> Result<Self> {
        let n = self.dim();
        let subsets = sorted_subsets(n, k);
        let index: BTreeMap<&[usize], usize> =
            subsets.iter().enumerate().map(|(p, s)| (s.as_slice(), p)).collect();
        let space: Vec<String> = subsets
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&i| self.space[i].as_str())
                    .collect::<Vec<_>>()
                    .join("∧")
            })
            .collect();
        let mut mats = Vec::with_capacity(self.algebra.dim());
        for rho in &self.mats {
            let mut m = Matrix::zeros(subsets.len(), subsets.len());
            for (col, s) in subsets.iter().enumerate() {
                // rho(x)(e_{s_0} ∧ ... ) = sum over slots of the action on
                // one factor, re-sorted with the wedge sign.
                for (slot, &orig) in s.iter().enumerate() {
                    for r in 0..n {
                        let c = rho.get(r, orig);
                        if c.is_zero() {
                            continue;
                        }
                        let mut replaced = s.clone();
                        replaced[slot] = r;
                        if let Some((sorted, sign)) = sort_with_sign(&replaced) {
                            let row = index[sorted.as_slice()];
                            let signed = if sign > 0 { c.clone() } else { c.neg() };
                            m.set(row, col, m.get(row, col).add(&signed));
                        }
                    }
                }
            }
            mats.push(m);
        }
        Ok(Representation {
            algebra: self.algebra.clone(),
            space,
            mats,
        })
    }

    /// Symmetric square, on the basis of unordered pairs i <= j.
    pub fn sym2(&self) -> Result<Self> {
        let n = self.dim();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i..n {
                pairs.push((i, j));
            }
        }
        let index: BTreeMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(p, &s)| (s, p)).collect();
        let space: Vec<String> = pairs
            .iter()
            .map(|&(i, j)| format!("{}·{}", self.space[i], self.space[j]))
            .collect();
        let mut mats = Vec::with_capacity(self.algebra.dim());
        for rho in &self.mats {
            let mut m = Matrix::zeros(pairs.len(), pairs.len());
            for (col, &(i, j)) in pairs.iter().enumerate() {
                for r in 0..n {
                    let c = rho.get(r, i);
                    if !c.is_zero() {
                        let key = (r.min(j), r.max(j));
                        let row = index[&key];
                        m.set(row, col, m.get(row, col).add(c));
                    }
                    let c = rho.get(r, j);
                    if !c.is_zero() {
                        let key = (r.min(i), r.max(i));
                        let row = index[&key];
                        m.set(row, col, m.get(row, col).add(c));
                    }
                }
            }
            mats.push(m);
        }
        Ok(Representation {
            algebra: self.algebra.clone(),
            space,
            mats,
        })
    }

    /// Restriction along a subalgebra embedding: `embedding[i]` holds the
    /// parent-basis coordinates of the i-th basis element of `sub`. Checked
    /// against `sub`'s bracket table.
    pub fn restrict(&self, sub: Arc<LieAlgebra>, embedding: &[Vec<Scalar>]) -> Result<Self> {
        if embedding.len() != sub.dim() {
            return Err(Error::DimensionMismatch(
                "one embedding vector per subalgebra basis element".into(),
            ));
        }
        let mats: Vec<Matrix> = embedding
            .iter()
            .map(|coords| {
                let x: Vec<Poly> = coords.iter().map(|s| Poly::constant(s.clone())).collect();
                self.matrix_of(&x)
            })
            .collect();
        Representation::new(sub, self.space.clone(), mats)
    }

    /// Joint kernel of the action: the invariant vectors.
    pub fn invariants(&self) -> Result<Vec<Vec<Scalar>>> {
        let d = self.dim();
        let mut stacked = Matrix::zeros(0, d);
        for m in &self.mats {
            stacked = stacked.vstack(m)?;
        }
        linalg::kernel(&stacked)
    }

    /// Evaluate all parameters to scalars.
    pub fn eval(&self, values: &BTreeMap<String, Scalar>) -> Result<Self> {
        let poly_map: BTreeMap<String, Poly> = values
            .iter()
            .map(|(k, v)| (k.clone(), Poly::constant(v.clone())))
            .collect();
        let mats = self
            .mats
            .iter()
            .map(|m| m.eval(values))
            .collect::<Result<Vec<_>>>()?;
        Representation::new_unchecked(
            Arc::new(self.algebra.substitute(&poly_map)),
            self.space.clone(),
            mats,
        )
    }

    fn same_algebra(&self, other: &Representation) -> Result<()> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) && self.algebra.basis() != other.algebra.basis() {
            return Err(Error::DimensionMismatch(
                "representations live over different algebras".into(),
            ));
        }
        Ok(())
    }
}

/// Sorted k-subsets of 0..n in lexicographic order.
pub fn sorted_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Sort an index tuple, returning the permutation sign; `None` when two
/// indices coincide (the wedge vanishes).
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// Basis of the space of equivariant linear maps `V -> W`, returned as
/// matrices (`W`-rows by `V`-columns).
pub fn equivariant_maps(v: &Representation, w: &Representation) -> Result<Vec<Matrix>> {
    let hom = v.hom(w)?;
    let flat = hom.invariants()?;
    let (dv, dw) = (v.dim(), w.dim());
    flat.iter()
        .map(|t| {
            // Index (a, b) of V* ⊗ W sits at a*dw + b; entry (b, a) of the map.
            Matrix::from_rows(
                (0..dw)
                    .map(|b| (0..dv).map(|a| Poly::constant(t[a * dw + b].clone())).collect())
                    .collect(),
            )
        })
        .collect()
}

/// A common eigenspace: every vector in `basis` satisfies
/// `rho(e_i) v = character[i] * v`.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub basis: Vec<Vec<Scalar>>,
    pub character: Vec<Scalar>,
}

/// Common eigen-strata of a representation, grouped by rational character.
/// `complete` is true when every characteristic polynomial met along the way
/// split into rational linear factors; otherwise lines with irrational
/// eigenvalues may exist beyond the ones listed.
#[derive(Clone, Debug)]
pub struct EigenStrata {
    pub eigenspaces: Vec<Eigenspace>,
    pub complete: bool,
}

/// Find all common eigenspaces with rational characters.
///
/// A common eigenvector is killed by the derived subalgebra's action (a
/// character is a homomorphism into an abelian algebra), so the search space
/// is the joint kernel of the commutators; on it the operators commute and
/// can be split one at a time by rational eigenvalues.
pub fn eigen_strata(rep: &Representation) -> Result<EigenStrata> {
    let n = rep.algebra().dim();
    let d = rep.dim();
    // Joint kernel of rho([e_i, e_j]) = [rho_i, rho_j].
    let mut stacked = Matrix::zeros(0, d);
    for i in 0..n {
        for j in (i + 1)..n {
            stacked = stacked.vstack(&rep.matrix(i).commutator(rep.matrix(j)))?;
        }
    }
    let v0 = linalg::kernel(&stacked)?;
    let mut out = EigenStrata {
        eigenspaces: Vec::new(),
        complete: true,
    };
    if v0.is_empty() {
        return Ok(out);
    }
    let ops: Vec<Matrix> = (0..n).map(|i| rep.matrix(i).clone()).collect();
    split_by_operators(&ops, v0, Vec::new(), &mut out)?;
    Ok(out)
}

/// Recursively split `subspace` (ambient coordinates) by the rational
/// eigenvalues of each operator in turn.
fn split_by_operators(
    ops: &[Matrix],
    subspace: Vec<Vec<Scalar>>,
    character: Vec<Scalar>,
    out: &mut EigenStrata,
) -> Result<()> {
    let Some((op, rest)) = ops.split_first() else {
        out.eigenspaces.push(Eigenspace {
            basis: subspace,
            character,
        });
        return Ok(());
    };
    // Restrict op to the subspace: solve op * B = B * A columnwise, where B
    // has the subspace basis as columns.
    let dim_s = subspace.len();
    let ambient = subspace[0].len();
    let b = Matrix::from_fn(ambient, dim_s, |r, c| Poly::constant(subspace[c][r].clone()));
    let sys = PrereducedSystem::new(&b)?;
    let mut a = Matrix::zeros(dim_s, dim_s);
    for c in 0..dim_s {
        let image = op.apply(&b.col(c));
        let rhs = image
            .iter()
            .map(|p| p.expect_scalar("invariant-line search needs scalar matrices"))
            .collect::<Result<Vec<_>>>()?;
        match sys.solve(&rhs)? {
            AffineOutcome::Solvable { particular, .. } => {
                for (r, val) in particular.into_iter().enumerate() {
                    a.set(r, c, Poly::constant(val));
                }
            }
            AffineOutcome::Infeasible { .. } => {
                // The joint kernel is invariant for genuine representations;
                // reaching this means the input was not one.
                return Err(Error::NotRepresentation(
                    "search subspace is not operator-invariant".into(),
                ));
            }
        }
    }
    let chi = linalg::char_poly(&a)?;
    let roots = rational_roots(&chi);
    for root in &roots.values {
        // Eigenspace of A for this root, in subspace coordinates.
        let shifted = &a - &Matrix::identity(dim_s).scale(root);
        let eig = linalg::kernel(&shifted)?;
        if eig.is_empty() {
            continue;
        }
        // Map back to ambient coordinates.
        let ambient_basis: Vec<Vec<Scalar>> = eig
            .iter()
            .map(|v| {
                (0..ambient)
                    .map(|r| {
                        let mut acc = Scalar::zero();
                        for (c, coeff) in v.iter().enumerate() {
                            if !coeff.is_zero() {
                                acc += &(&subspace[c][r] * coeff);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let mut chi_ext = character.clone();
        chi_ext.push(root.clone());
        split_by_operators(rest, ambient_basis, chi_ext, out)?;
    }
    // When the characteristic polynomial does not split over Q, common
    // eigenlines with irrational eigenvalues may hide in the complement.
    if !roots.exhaustive {
        out.complete = false;
    }
    Ok(())
}

/// Outcome of the invariant-line search.
///
/// `eigenspaces` lists the rational strata (each basis vector of a stratum
/// spans an invariant line, and every line inside a stratum shares its
/// character). `certified` means the polynomial system accounts for every
/// solution over the complex numbers, so "no further invariant lines" is a
/// theorem, not a sampling statement. `all_lines` flags the degenerate case
/// where every line is invariant.
#[derive(Clone, Debug)]
pub struct LineSearch {
    pub eigenspaces: Vec<Eigenspace>,
    pub certified: bool,
    pub all_lines: bool,
}

/// All lines fixed (up to scale) by every action matrix.
///
/// The decision engine is the wedge-vanishing system `v ∧ rho(x) v = 0`: on
/// each affine chart `v_j = 1, v_i = 0 (i < j)` of projective space the 2x2
/// minors generate an ideal whose Gröbner basis settles the chart — unit
/// ideal (no lines), zero ideal (every line), a single rational point (read
/// off by normal forms), or something richer. When every chart is settled
/// the answer is certified over the complex numbers; otherwise the rational
/// strata found by eigenvalue splitting are returned uncertified, as happens
/// when a resource cap ends a Gröbner run early.
pub fn invariant_lines(rep: &Representation) -> Result<LineSearch> {
    let n = rep.dim();
    if n > 10 {
        return Err(Error::Unsupported(format!(
            "invariant-line search is capped at dimension 10, got {n}"
        )));
    }
    let strata = eigen_strata(rep)?;
    let mut certified = true;
    let mut full_charts = 0usize;
    let mut points: Vec<Vec<Scalar>> = Vec::new();
    'charts: for j in 0..n {
        match analyze_chart(rep, j) {
            Ok(ChartVerdict::Empty) => {}
            Ok(ChartVerdict::Full) => full_charts += 1,
            Ok(ChartVerdict::Point(v)) => points.push(v),
            Ok(ChartVerdict::Other) => certified = false,
            Err(Error::ResourceCap(_)) => {
                // Per contract: fall back to "undecided" rather than guess.
                certified = false;
                break 'charts;
            }
            Err(e) => return Err(e),
        }
    }
    if full_charts == n && n > 0 {
        return Ok(LineSearch {
            eigenspaces: strata.eigenspaces,
            certified: true,
            all_lines: true,
        });
    }
    if full_charts > 0 {
        // Some hyperplane of lines is wholesale invariant but projective
        // space is not: the eigen-strata describe the situation, but the
        // point-extraction shortcut no longer enumerates everything.
        certified = false;
    }
    if certified {
        // Every chart resolved to nothing or a single rational point: the
        // points are the complete answer over C.
        let eigenspaces = points
            .into_iter()
            .map(|v| {
                let character = character_of(rep, &v)?;
                Ok(Eigenspace {
                    basis: vec![v],
                    character,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(LineSearch {
            eigenspaces,
            certified: true,
            all_lines: false,
        });
    }
    Ok(LineSearch {
        eigenspaces: strata.eigenspaces,
        certified: false,
        all_lines: false,
    })
}

enum ChartVerdict {
    /// Unit ideal: no invariant line meets the chart.
    Empty,
    /// Zero ideal: every point of the chart spans an invariant line.
    Full,
    /// Exactly one point (the chart ideal is the point's maximal ideal).
    Point(Vec<Scalar>),
    /// Positive-dimensional or irrational content; not settled here.
    Other,
}

/// Gröbner analysis of the wedge system on the chart `v_j = 1`,
/// `v_i = 0` for `i < j`.
fn analyze_chart(rep: &Representation, j: usize) -> Result<ChartVerdict> {
    let n = rep.dim();
    let unknowns: Vec<String> = ((j + 1)..n).map(|i| format!("u{i}")).collect();
    let v: Vec<Poly> = (0..n)
        .map(|i| {
            if i < j {
                Poly::zero()
            } else if i == j {
                Poly::one()
            } else {
                Poly::var(&format!("u{i}"))
            }
        })
        .collect();
    let mut gens = Vec::new();
    for op in rep.matrices() {
        let w = op.apply(&v);
        for a in 0..n {
            for b in (a + 1)..n {
                let minor = v[a].mul(&w[b]).sub(&v[b].mul(&w[a]));
                if !minor.is_zero() {
                    gens.push(minor);
                }
            }
        }
    }
    if gens.is_empty() {
        return Ok(ChartVerdict::Full);
    }
    let gens = crate::exact::groebner::compress_generators(&gens);
    let gb = GroebnerBasis::new(&gens, GroebnerCaps::from_env())?;
    if gb.is_unit_ideal() {
        return Ok(ChartVerdict::Empty);
    }
    if gb.is_zero_ideal() {
        return Ok(ChartVerdict::Full);
    }
    // A chart holding exactly one (reduced) point has every unknown congruent
    // to a constant modulo the ideal; the ideal is then maximal, so nothing
    // else hides in the chart.
    let mut coords = vec![Scalar::zero(); n];
    coords[j] = Scalar::one();
    for (offset, u) in unknowns.iter().enumerate() {
        let nf = gb.reduce(&Poly::var(u))?;
        let Some(c) = nf.as_scalar() else {
            return Ok(ChartVerdict::Other);
        };
        coords[j + 1 + offset] = c;
    }
    Ok(ChartVerdict::Point(coords))
}

/// Character of the line spanned by `v`: the eigenvalue of each basis
/// operator. Errors if `v` is not actually a common eigenvector.
fn character_of(rep: &Representation, v: &[Scalar]) -> Result<Vec<Scalar>> {
    let pivot = v
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::Degenerate("zero vector spans no line".into()))?;
    let vp: Vec<Poly> = v.iter().map(|c| Poly::constant(c.clone())).collect();
    let mut chi = Vec::with_capacity(rep.algebra().dim());
    for op in rep.matrices() {
        let w = op.apply(&vp);
        let w: Vec<Scalar> = w
            .iter()
            .map(|p| p.expect_scalar("character extraction"))
            .collect::<Result<_>>()?;
        let lambda = &w[pivot] / &v[pivot];
        for (a, wa) in w.iter().enumerate() {
            if *wa != &lambda * &v[a] {
                return Err(Error::Degenerate(
                    "vector is not a common eigenvector".into(),
                ));
            }
        }
        chi.push(lambda);
    }
    Ok(chi)
}

struct RationalRoots {
    values: Vec<Scalar>,
    /// True when the polynomial provably splits into these roots over Q
    /// (with multiplicity matching the degree).
    exhaustive: bool,
}

/// Rational roots by the rational root theorem on the cleared-denominator
/// polynomial.
fn rational_roots(p: &UniPoly) -> RationalRoots {
    if p.is_zero() {
        return RationalRoots {
            values: Vec::new(),
            exhaustive: false,
        };
    }
    // x^k factors out directly; its multiplicity counts toward splitting.
    let mut poly = p.clone();
    let mut values = Vec::new();
    let mut multiplicity_sum = 0usize;
    if poly.eval(&Scalar::zero()).is_zero() {
        values.push(Scalar::zero());
        while poly.eval(&Scalar::zero()).is_zero() {
            let (q, _) = poly
                .div_rem(&UniPoly::from_coeffs(vec![Scalar::zero(), Scalar::one()]))
                .expect("x is nonzero");
            poly = q;
            multiplicity_sum += 1;
        }
    }
    if poly.degree() == Some(0) {
        return RationalRoots {
            values,
            exhaustive: true,
        };
    }
    // Clear denominators to an integer polynomial.
    let mut lcm = BigInt::from(1);
    for c in poly.coeffs() {
        let d = c.denom();
        let g = num::integer::gcd(lcm.clone(), d.clone());
        lcm = (&lcm / g) * d;
    }
    let ints: Vec<BigInt> = poly
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let a0 = ints.first().cloned().unwrap_or_else(BigInt::zero);
    let an = ints.last().cloned().unwrap_or_else(BigInt::zero);
    let (Some(p_divs), Some(q_divs)) = (small_divisors(&a0), small_divisors(&an)) else {
        // Constant terms too large to factor honestly; report what we have.
        return RationalRoots {
            values,
            exhaustive: false,
        };
    };
    for pp in &p_divs {
        for qq in &q_divs {
            let cand = Scalar::try_ratio(BigInt::from(*pp), BigInt::from(*qq))
                .expect("divisors are nonzero");
            for c in [cand.clone(), -&cand] {
                if values.contains(&c) {
                    continue;
                }
                if poly.eval(&c).is_zero() {
                    // Count multiplicity for the exhaustiveness check.
                    let mut q = poly.clone();
                    let lin = UniPoly::from_coeffs(vec![-&c, Scalar::one()]);
                    loop {
                        let (quot, rem) = q.div_rem(&lin).expect("linear divisor");
                        if rem.is_zero() {
                            multiplicity_sum += 1;
                            q = quot;
                        } else {
                            break;
                        }
                    }
                    values.push(c);
                }
            }
        }
    }
    values.sort();
    RationalRoots {
        values,
        exhaustive: multiplicity_sum == p.degree().unwrap_or(0),
    }
}

/// Positive divisors, or None when the integer is too large to factor by
/// trial division in good conscience.
fn small_divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n: i64 = n.abs().try_into().ok()?;
    if n == 0 {
        // Zero constant term is handled by factoring x out beforehand.
        return Some(vec![1]);
    }
    if n > 10_000_000 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort();
    Some(divs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::LieAlgebra;

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

    fn sl2_defining() -> Representation {
        let g = sl2();
        Representation::new(
            g,
            vec!["v1".into(), "v2".into()],
            vec![
                Matrix::from_int_rows(&[&[1, 0], &[0, -1]]),
                Matrix::from_int_rows(&[&[0, 1], &[0, 0]]),
                Matrix::from_int_rows(&[&[0, 0], &[1, 0]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn checked_constructor_rejects_wrong_matrices() {
        let g = sl2();
        let err = Representation::new(
            g,
            vec!["v1".into(), "v2".into()],
            vec![
                Matrix::from_int_rows(&[&[1, 0], &[0, -1]]),
                Matrix::from_int_rows(&[&[0, 1], &[0, 0]]),
                Matrix::from_int_rows(&[&[0, 0], &[2, 0]]),
            ],
        );
        assert!(matches!(err, Err(Error::NotRepresentation(_))));
    }

    #[test]
    fn schur_line_in_hom_of_irreducibles() {
        let v = sl2_defining();
        let maps = equivariant_maps(&v, &v).unwrap();
        assert_eq!(maps.len(), 1);
        // The one equivariant endomorphism of an absolutely irreducible
        // module is a multiple of the identity.
        let m = &maps[0];
        assert_eq!(m.get(0, 0), m.get(1, 1));
        assert_eq!(m.get(0, 1), &Poly::zero());
        assert_eq!(m.get(1, 0), &Poly::zero());
    }

    #[test]
    fn symmetric_square_of_the_dual_adjoint_contains_the_killing_form() {
        let ad = Representation::adjoint(sl2()).unwrap();
        let inv = ad.dual().sym2().unwrap().invariants().unwrap();
        // One invariant symmetric bilinear form, proportional to Killing.
        assert_eq!(inv.len(), 1);
    }

    #[test]
    fn exterior_square_of_defining_is_trivial() {
        // Lambda^2 of the 2-dimensional module is the determinant line; for
        // sl2 the determinant action is trivial.
        let v = sl2_defining();
        let w = v.exterior(2).unwrap();
        assert_eq!(w.dim(), 1);
        for i in 0..3 {
            assert!(w.matrix(i).is_zero());
        }
        assert_eq!(w.space(), &["v1∧v2".to_string()]);
    }

    #[test]
    fn tensor_dimension_and_invariants() {
        let v = sl2_defining();
        // V ⊗ V = sym^2 ⊕ Lambda^2: exactly one invariant line (the wedge).
        let vv = v.tensor(&v).unwrap();
        assert_eq!(vv.dim(), 4);
        assert_eq!(vv.invariants().unwrap().len(), 1);
    }

    #[test]
    fn no_common_eigenline_for_simple_action() {
        let strata = eigen_strata(&sl2_defining()).unwrap();
        assert!(strata.eigenspaces.is_empty());
        assert!(strata.complete);
        // The polynomial system certifies the absence over C, not just Q.
        let search = invariant_lines(&sl2_defining()).unwrap();
        assert!(search.eigenspaces.is_empty());
        assert!(search.certified);
        assert!(!search.all_lines);
    }

    #[test]
    fn scalar_action_fixes_every_line() {
        let g = Arc::new(LieAlgebra::from_bracket_rules("r", &["z"], &[]).unwrap());
        let rep = Representation::new(
            g,
            vec!["v1".into(), "v2".into()],
            vec![Matrix::identity(2)],
        )
        .unwrap();
        let search = invariant_lines(&rep).unwrap();
        assert!(search.all_lines);
        assert!(search.certified);
        // One stratum covering the whole space, with character 1 on z.
        assert_eq!(search.eigenspaces.len(), 1);
        assert_eq!(search.eigenspaces[0].basis.len(), 2);
        assert_eq!(search.eigenspaces[0].character, vec![Scalar::one()]);
    }

    #[test]
    fn borel_action_has_one_eigenline_with_character() {
        let b = Arc::new(
            LieAlgebra::from_bracket_rules("b2", &["h", "e"], &[("h", "e", "e")]).unwrap(),
        );
        let rep = Representation::new(
            b,
            vec!["v1".into(), "v2".into()],
            vec![
                // h = diag(1, 0), e = E12: [h, e] = e holds.
                Matrix::from_int_rows(&[&[1, 0], &[0, 0]]),
                Matrix::from_int_rows(&[&[0, 1], &[0, 0]]),
            ],
        )
        .unwrap();
        let search = invariant_lines(&rep).unwrap();
        assert!(search.certified);
        assert!(!search.all_lines);
        assert_eq!(search.eigenspaces.len(), 1);
        let e = &search.eigenspaces[0];
        assert_eq!(e.basis, vec![vec![Scalar::one(), Scalar::zero()]]);
        assert_eq!(e.character, vec![Scalar::one(), Scalar::zero()]);
    }

    #[test]
    fn rational_root_enumeration() {
        // (x - 1/2)(x + 3)(x - 2)
        let p = UniPoly::from_coeffs(vec![
            Scalar::from_int(3),
            Scalar::ratio(-13, 2),
            Scalar::ratio(1, 2),
            Scalar::one(),
        ]);
        let roots = rational_roots(&p);
        assert!(roots.exhaustive);
        assert_eq!(
            roots.values,
            vec![Scalar::from_int(-3), Scalar::ratio(1, 2), Scalar::from_int(2)]
        );
        // x^2 - 2 has no rational roots and must say so honestly.
        let q = UniPoly::from_coeffs(vec![Scalar::from_int(-2), Scalar::zero(), Scalar::one()]);
        let roots = rational_roots(&q);
        assert!(roots.values.is_empty());
        assert!(!roots.exhaustive);
    }

    #[test]
    fn restriction_checks_the_subalgebra_table() {
        let v = sl2_defining();
        let b = Arc::new(
            LieAlgebra::from_bracket_rules("b2", &["h", "e"], &[("h", "e", "2*e")]).unwrap(),
        );
        let emb = vec![
            vec![Scalar::one(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one(), Scalar::zero()],
        ];
        let restricted = v.restrict(b.clone(), &emb).unwrap();
        assert_eq!(restricted.dim(), 2);
        // Embedding h -> f violates [h, e] = 2e and must be rejected.
        let bad = vec![
            vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
            vec![Scalar::zero(), Scalar::one(), Scalar::zero()],
        ];
        assert!(v.restrict(b, &bad).is_err());
    }
}

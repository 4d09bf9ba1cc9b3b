//! Explicit matrix realizations of the catalogued subalgebras inside sl₃,
//! together with their complement modules.
//!
//! The classification works with conjugacy classes; computation needs one
//! concrete representative per class. Each constructor here fixes a basis of
//! `h` as traceless 3×3 matrices, verifies that the span closes under the
//! commutator with exactly the abstract structure constants, and builds the
//! six-dimensional module `V ⊕ V*` (column vectors plus dual, `x` acting as
//! `blockdiag(x, −xᵀ)`). The basis orders and names are chosen so the stored
//! bracket families in [`super::families`] read off coordinate-for-coordinate
//! against the module action.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{Matrix, Poly, Scalar};
use crate::liealg::LieAlgebra;
use crate::repthy::Representation;

/// A subalgebra fixed as matrices: the abstract algebra, the images of its
/// basis in the ambient 3×3 algebra, and the action on the complement.
#[derive(Clone)]
pub struct Realization {
    pub h: Arc<LieAlgebra>,
    pub embedding: Vec<Matrix>,
    pub module: Representation,
}

impl Realization {
    /// Wrap the three pieces, first checking that the embedding closes:
    /// `[emb_i, emb_j]` must equal `Σ_k c^k_{ij} emb_k` for the abstract
    /// structure constants `c`. The check is symbolic, so parametric
    /// embeddings (the `s²` pencil) are verified for every parameter value
    /// at once.
    pub fn new(h: Arc<LieAlgebra>, embedding: Vec<Matrix>, module: Representation) -> Result<Self> {
        if embedding.len() != h.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} embedding matrices for a {}-dimensional algebra",
                embedding.len(),
                h.dim()
            )));
        }
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                let lhs = embedding[i].commutator(&embedding[j]);
                let mut rhs = Matrix::zeros(lhs.rows(), lhs.cols());
                for (k, c) in h.bracket(i, j).iter().enumerate() {
                    rhs = &rhs + &embedding[k].scale_poly(c);
                }
                if lhs != rhs {
                    return Err(Error::InvalidSpan(format!(
                        "embedding does not close at [{}, {}]",
                        h.basis()[i],
                        h.basis()[j]
                    )));
                }
            }
        }
        Ok(Realization {
            h,
            embedding,
            module,
        })
    }

    /// Killing-type norm `tr(x²)` of an embedded element, used to tell the
    /// three `(ℝz ⊕ ℝt) ⋉ ℝ²` cases apart.
    pub fn trace_norm(&self, basis_name: &str) -> Result<Scalar> {
        let i = self.h.basis_index(basis_name)?;
        let x = &self.embedding[i];
        (x * x).trace().expect_scalar("trace norm")
    }
}

/// 3×3 elementary matrix `E_ij` (1-indexed).
fn e(i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(3, 3);
    m.set(i - 1, j - 1, Poly::one());
    m
}

/// 3×3 integer diagonal matrix.
fn diag(d: [i64; 3]) -> Matrix {
    let mut m = Matrix::zeros(3, 3);
    for (i, v) in d.into_iter().enumerate() {
        m.set(i, i, Poly::constant(Scalar::from_int(v)));
    }
    m
}

fn neg(m: &Matrix) -> Matrix {
    m.scale(&Scalar::from_int(-1))
}

/// Triple the grading element of the line stabilizer: `s = diag(1,1,−2)`,
/// so `s/3` acts with module weights `1` on `V`'s plane part and
/// `−2` on its line part.
fn grading() -> Matrix {
    diag([1, 1, -2])
}

/// The module `V ⊕ V*` over an embedded subalgebra, `x` acting as
/// `blockdiag(x, −xᵀ)`, with caller-chosen coordinate names.
fn v_plus_dual(h: &Arc<LieAlgebra>, embedding: &[Matrix], names: [&str; 6]) -> Result<Representation> {
    let z = Matrix::zeros(3, 3);
    let mats = embedding
        .iter()
        .map(|x| Matrix::block2(x, &z, &z, &neg(&x.transpose())))
        .collect::<Result<Vec<_>>>()?;
    Representation::new(
        h.clone(),
        names.iter().map(|s| s.to_string()).collect(),
        mats,
    )
}

/// Build a realization from named embedding matrices, deriving the abstract
/// bracket table from the matrices themselves.
fn from_mats(name: &str, basis: &[&str], mats: Vec<Matrix>, module_names: [&str; 6]) -> Result<Realization> {
    let h = Arc::new(LieAlgebra::from_matrices(name, basis, &mats)?);
    let module = v_plus_dual(&h, &mats, module_names)?;
    Realization::new(h, mats, module)
}

const VW: [&str; 6] = ["v1", "v2", "v3", "w1", "w2", "w3"];

/// All of sl₃ itself; complement coordinates `v1..v3, th1..th3` so the
/// invariant-bracket family reads `[v_i, v_j] = α₁ th_k` cyclically.
pub fn sl3() -> Result<Realization> {
    from_mats(
        "sl3",
        &["h1", "h2", "e12", "e13", "e23", "f21", "f31", "f32"],
        vec![
            diag([1, -1, 0]),
            diag([0, 1, -1]),
            e(1, 2),
            e(1, 3),
            e(2, 3),
            e(2, 1),
            e(3, 1),
            e(3, 2),
        ],
        ["v1", "v2", "v3", "th1", "th2", "th3"],
    )
}

/// Stabilizer of the line `ℝe₃`: the maximal parabolic `p₁`.
pub fn p1() -> Result<Realization> {
    from_mats(
        "p1",
        &["s", "h", "e", "f", "x1", "x2"],
        vec![grading(), diag([1, -1, 0]), e(1, 2), e(2, 1), e(3, 1), e(3, 2)],
        VW,
    )
}

/// Image of `p₁` under the outer automorphism `x ↦ −xᵀ`; abstractly the
/// same bracket table, embedded as the stabilizer of a plane.
pub fn p2() -> Result<Realization> {
    from_mats(
        "p2",
        &["s", "h", "e", "f", "x1", "x2"],
        vec![
            neg(&grading()),
            neg(&diag([1, -1, 0])),
            neg(&e(2, 1)),
            neg(&e(1, 2)),
            neg(&e(1, 3)),
            neg(&e(2, 3)),
        ],
        VW,
    )
}

/// The Borel subalgebra `p₁₂ = (ℝz ⊕ b²) ⋉ ℝ²`, realized inside `p₁` by
/// dropping the lowering generator.
pub fn p12() -> Result<Realization> {
    from_mats(
        "p12",
        &["s", "h", "e", "x1", "x2"],
        vec![grading(), diag([1, -1, 0]), e(1, 2), e(3, 1), e(3, 2)],
        VW,
    )
}

/// The Levi factor `gl₂` of `p₁`; complement coordinates follow the
/// weight basis `v1, v2, r` for `V` and `th1, th2, si` for its dual.
pub fn gl2() -> Result<Realization> {
    from_mats(
        "gl2",
        &["s", "h", "e", "f"],
        vec![grading(), diag([1, -1, 0]), e(1, 2), e(2, 1)],
        ["v1", "v2", "r", "th1", "th2", "si"],
    )
}

/// `sl₂ ⋉ ℝ²` in the position matching the untwisted bracket list: the
/// `sl₂` acts on the plane `⟨v2, v3⟩` and the abelian part raises into `v1`.
pub fn sl2_r2_phi0() -> Result<Realization> {
    from_mats(
        "sl2+r2",
        &["e", "f", "h", "x1", "x2"],
        vec![e(2, 3), e(3, 2), diag([0, 1, -1]), e(1, 2), e(1, 3)],
        VW,
    )
}

/// `sl₂ ⋉ ℝ²` in the position matching the twisted (cocycle) data: the
/// `sl₂` acts on `⟨v1, v2⟩` and the abelian part raises into the line.
pub fn sl2_r2_phi1() -> Result<Realization> {
    from_mats(
        "sl2+r2",
        &["e", "f", "h", "x1", "x2"],
        vec![e(1, 2), e(2, 1), diag([1, -1, 0]), e(1, 3), e(2, 3)],
        VW,
    )
}

/// `(ℝz ⊕ ℝt) ⋉ ℝ²` with `t` of negative trace norm (a rotation).
pub fn rz_t_neg() -> Result<Realization> {
    from_mats(
        "rz+rt(neg)",
        &["s", "t", "x1", "x2"],
        vec![grading(), &e(1, 2) - &e(2, 1), e(3, 1), e(3, 2)],
        VW,
    )
}

/// `(ℝz ⊕ ℝt) ⋉ ℝ²` with nilpotent `t` (trace norm zero).
pub fn rz_t_null() -> Result<Realization> {
    from_mats(
        "rz+rt(null)",
        &["s", "t", "x1", "x2"],
        vec![grading(), e(1, 2), e(3, 1), e(3, 2)],
        VW,
    )
}

/// `(ℝz ⊕ ℝt) ⋉ ℝ²` with `t` of positive trace norm (a boost).
pub fn rz_t_pos() -> Result<Realization> {
    from_mats(
        "rz+rt(pos)",
        &["s", "t", "x1", "x2"],
        vec![grading(), diag([1, -1, 0]), e(3, 1), e(3, 2)],
        VW,
    )
}

/// `(ℝz ⊕ b²) ⋉ ℝ`: the Borel of the Levi acting on the invariant line of
/// the nilradical.
pub fn rz_b2_r() -> Result<Realization> {
    from_mats(
        "rz+b2+r",
        &["s", "h", "e", "x"],
        vec![grading(), diag([1, -1, 0]), e(1, 2), e(3, 2)],
        VW,
    )
}

/// The parameter of the `s²` pencil, as a polynomial.
pub fn l_param() -> Poly {
    Poly::var("l")
}

/// The pencil `s² ⋉ ℝ² = ℝ(h + l·z) ⋉ ℝe` acting on `V ⊕ V*`, with `l`
/// symbolic. The generator `t` embeds as `diag(l/3 − 1/2, l/3 + 1/2, −2l/3)`;
/// its weights on `x1, x2` are `l ∓ 1/2`.
pub fn s2_semidirect() -> Result<Realization> {
    let l = l_param();
    let h = Arc::new(LieAlgebra::from_bracket_rules(
        "s2+r2",
        &["t", "e", "x1", "x2"],
        &[
            ("t", "e", "e"),
            ("t", "x1", "(l-1/2)*x1"),
            ("t", "x2", "(l+1/2)*x2"),
            ("e", "x1", "x2"),
        ],
    )?);
    let third = Poly::constant(Scalar::parse("1/3")?);
    let half = Poly::constant(Scalar::parse("1/2")?);
    let mut t = Matrix::zeros(3, 3);
    t.set(0, 0, third.mul(&l).sub(&half));
    t.set(1, 1, third.mul(&l).add(&half));
    t.set(2, 2, Poly::constant(Scalar::parse("-2/3")?).mul(&l));
    let emb = vec![t, e(2, 1), e(1, 3), e(2, 3)];
    let module = v_plus_dual(&h, &emb, VW)?;
    Realization::new(h, emb, module)
}

/// The `s²` realization with the pencil parameter evaluated at a rational
/// point.
pub fn s2_at(l: &Scalar) -> Result<Realization> {
    let generic = s2_semidirect()?;
    let values: BTreeMap<String, Scalar> = [("l".to_string(), l.clone())].into();
    let poly_map: BTreeMap<String, Poly> = [("l".to_string(), Poly::constant(l.clone()))].into();
    let h = Arc::new(generic.h.substitute(&poly_map));
    let emb: Vec<Matrix> = generic.embedding.iter().map(|m| m.substitute(&poly_map)).collect();
    let mats: Vec<Matrix> = generic
        .module
        .matrices()
        .iter()
        .map(|m| m.eval(&values))
        .collect::<Result<Vec<_>>>()?;
    let module = Representation::new(h.clone(), generic.module.space().to_vec(), mats)?;
    Realization::new(h, emb, module)
}

/// The diagonal `su(2)` inside `su(2)³`, embedded in sl₃ as rotation
/// matrices; the complement is two copies of the adjoint module.
pub fn su2_diagonal() -> Result<Realization> {
    let l1 = &e(3, 2) - &e(2, 3);
    let l2 = &e(1, 3) - &e(3, 1);
    let l3 = &e(2, 1) - &e(1, 2);
    let mats = vec![l1, l2, l3];
    let h = Arc::new(LieAlgebra::from_matrices("su2", &["e1", "e2", "e3"], &mats)?);
    let z = Matrix::zeros(3, 3);
    let module_mats: Vec<Matrix> = (0..3)
        .map(|i| {
            let ad = h.ad_basis(i);
            Matrix::block2(&ad, &z, &z, &ad)
        })
        .collect::<Result<Vec<_>>>()?;
    let module = Representation::new(
        h.clone(),
        ["x1", "x2", "x3", "y1", "y2", "y3"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        module_mats,
    )?;
    Realization::new(h, mats, module)
}

/// The full nine-dimensional triple product, with the diagonal copy first
/// (`d1..d3`) and the first two factors as its complement (`x`, `y`). The
/// third factor is recovered as `d − x − y`.
pub fn su2_cubed() -> Result<LieAlgebra> {
    LieAlgebra::from_bracket_rules(
        "su2cubed",
        &["d1", "d2", "d3", "x1", "x2", "x3", "y1", "y2", "y3"],
        &[
            ("d1", "d2", "d3"),
            ("d2", "d3", "d1"),
            ("d3", "d1", "d2"),
            ("x1", "x2", "x3"),
            ("x2", "x3", "x1"),
            ("x3", "x1", "x2"),
            ("y1", "y2", "y3"),
            ("y2", "y3", "y1"),
            ("y3", "y1", "y2"),
            ("d1", "x2", "x3"),
            ("d1", "x3", "-x2"),
            ("d2", "x1", "-x3"),
            ("d2", "x3", "x1"),
            ("d3", "x1", "x2"),
            ("d3", "x2", "-x1"),
            ("d1", "y2", "y3"),
            ("d1", "y3", "-y2"),
            ("d2", "y1", "-y3"),
            ("d2", "y3", "y1"),
            ("d3", "y1", "y2"),
            ("d3", "y2", "-y1"),
        ],
    )
}

/// The trivial isotropy of the group case: a zero-dimensional subalgebra
/// acting on a three-dimensional complement.
pub fn trivial_isotropy() -> Result<Realization> {
    let h = Arc::new(LieAlgebra::from_table("point", Vec::new(), Vec::new())?);
    let module = Representation::new(
        h.clone(),
        ["e1", "e2", "e3"].iter().map(|s| s.to_string()).collect(),
        Vec::new(),
    )?;
    Realization::new(h, Vec::new(), module)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_embedding_closes_and_is_checked_on_construction() {
        for r in [
            sl3(),
            p1(),
            p2(),
            p12(),
            gl2(),
            sl2_r2_phi0(),
            sl2_r2_phi1(),
            rz_t_neg(),
            rz_t_null(),
            rz_t_pos(),
            rz_b2_r(),
            s2_semidirect(),
            su2_diagonal(),
            trivial_isotropy(),
        ] {
            let r = r.unwrap();
            // Realization::new already ran the closure check; confirm the
            // module dimension while we are here.
            assert!(r.module.dim() == 6 || r.module.dim() == 3);
        }
    }

    #[test]
    fn the_triple_product_is_a_lie_algebra_with_the_diagonal_action() {
        let g = su2_cubed().unwrap();
        assert_eq!(g.dim(), 9);
        assert!(g.is_lie_algebra(), "defect: {:?}", g.jacobi_defect());
        // The d-span acts on the x- and y-spans exactly as the recorded
        // module of the diagonal realization.
        let r = su2_diagonal().unwrap();
        for i in 0..3 {
            let action = r.module.matrix(i);
            for a in 0..6 {
                let col: Vec<Poly> = g.bracket(i, 3 + a)[3..].to_vec();
                let want: Vec<Poly> = (0..6).map(|b| action.get(b, a).clone()).collect();
                assert_eq!(col, want, "d{} on slot {}", i + 1, a);
            }
        }
    }

    #[test]
    fn p2_has_the_same_bracket_table_as_p1() {
        let a = p1().unwrap();
        let b = p2().unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(a.h.bracket(i, j), b.h.bracket(i, j));
            }
        }
    }

    #[test]
    fn trace_norms_separate_the_three_rt_cases() {
        assert!(rz_t_neg().unwrap().trace_norm("t").unwrap() < Scalar::zero());
        assert_eq!(rz_t_null().unwrap().trace_norm("t").unwrap(), Scalar::zero());
        assert!(rz_t_pos().unwrap().trace_norm("t").unwrap() > Scalar::zero());
    }

    #[test]
    fn the_grading_element_has_the_advertised_eigenvalues() {
        // s = 3z with z = diag(2,−1,−1) up to permutation and overall scale:
        // the eigenvalue multiset of s must be {1, 1, −2} (the permuted,
        // sign-flipped triple), and s must commute with the Levi.
        let g = gl2().unwrap();
        let s = &g.embedding[0];
        let evs: Vec<Scalar> = (0..3).map(|i| s.get(i, i).expect_scalar("eigenvalue").unwrap()).collect();
        assert_eq!(evs, vec![Scalar::one(), Scalar::one(), Scalar::from_int(-2)]);
        for x in &g.embedding {
            assert!(s.commutator(x).is_zero());
        }
    }

    #[test]
    fn modules_match_the_recorded_weight_actions() {
        // Twisted-position sl₂⋉ℝ²: e sends v2 to v1 and w1 to −w2.
        let r = sl2_r2_phi1().unwrap();
        let e_mat = r.module.matrix(0);
        let mut v2 = vec![Poly::zero(); 6];
        v2[1] = Poly::one();
        let mut expected = vec![Poly::zero(); 6];
        expected[0] = Poly::one();
        assert_eq!(e_mat.apply(&v2), expected);
        let mut w1 = vec![Poly::zero(); 6];
        w1[3] = Poly::one();
        let mut exp_w = vec![Poly::zero(); 6];
        exp_w[4] = Poly::constant(Scalar::from_int(-1));
        assert_eq!(e_mat.apply(&w1), exp_w);

        // Untwisted position: x1 sends v2 to v1, e sends v3 to v2.
        let r0 = sl2_r2_phi0().unwrap();
        let x1_mat = r0.module.matrix(3);
        assert_eq!(x1_mat.apply(&v2), expected);
        let mut v3 = vec![Poly::zero(); 6];
        v3[2] = Poly::one();
        let mut exp_v2 = vec![Poly::zero(); 6];
        exp_v2[1] = Poly::one();
        assert_eq!(r0.module.matrix(0).apply(&v3), exp_v2);

        // s² pencil: e sends v1 to v2 and w2 to −w1; t acts diagonally with
        // weights (l/3−1/2, l/3+1/2, −2l/3, …) matching its embedding.
        let s2 = s2_semidirect().unwrap();
        let e_act = s2.module.matrix(1);
        let mut v1 = vec![Poly::zero(); 6];
        v1[0] = Poly::one();
        assert_eq!(e_act.apply(&v1), exp_v2);
        let t_act = s2.module.matrix(0);
        assert_eq!(t_act.get(0, 0), &Poly::parse("(1/3)*l-1/2").unwrap());
        assert_eq!(t_act.get(4, 4), &Poly::parse("-(1/3)*l-1/2").unwrap());
    }

    #[test]
    fn the_pencil_evaluates_cleanly_at_rational_points() {
        let r = s2_at(&Scalar::parse("3/2").unwrap()).unwrap();
        // At l = 3/2 the t-weights on (x1, x2) are (1, 2) and the module
        // weights on (v1, v2, v3) are (0, 1, −1).
        let t_ad = r.h.ad_basis(0);
        assert_eq!(t_ad.get(2, 2), &Poly::one());
        assert_eq!(t_ad.get(3, 3), &Poly::parse("2").unwrap());
        let t_act = r.module.matrix(0);
        assert_eq!(t_act.get(0, 0), &Poly::zero());
        assert_eq!(t_act.get(1, 1), &Poly::one());
        assert_eq!(t_act.get(2, 2), &Poly::parse("-1").unwrap());
    }

    #[test]
    fn the_diagonal_su2_complement_is_two_adjoint_copies() {
        let r = su2_diagonal().unwrap();
        assert_eq!(r.h.dim(), 3);
        assert_eq!(r.module.dim(), 6);
        // [e1, e2] = e3 cyclically.
        let e3 = vec![Poly::zero(), Poly::zero(), Poly::one()];
        let e1 = vec![Poly::one(), Poly::zero(), Poly::zero()];
        assert_eq!(r.h.bracket(0, 1), &e3[..]);
        assert_eq!(r.h.bracket(1, 2), &e1[..]);
    }
}

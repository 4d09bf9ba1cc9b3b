//! Ready-made homogeneous models built from the catalog's reconstructed
//! algebras, each with its standard splitting and eigenspace structure.

use std::sync::Arc;

use crate::catalog;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Poly, Scalar};
use crate::liealg::LieAlgebra;

use super::HomogeneousModel;

fn stored_algebra(case: &str, name: &str) -> Result<Arc<LieAlgebra>> {
    let case_data = catalog::by_name(case)?;
    case_data
        .algebras
        .iter()
        .find(|a| a.name == name)
        .map(|a| a.algebra.clone())
        .ok_or_else(|| {
            Error::UnknownCase(format!("case {case} stores no algebra named {name}"))
        })
}

/// `diag(1, …, 1, −1, …, −1)` with `k` of each sign: the splitting that
/// makes the first `k` complement vectors the +1 eigenspace.
fn split_structure(k: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        j.set(i, i, Poly::one());
        j.set(k + i, k + i, Poly::constant(Scalar::from_int(-1)));
    }
    j
}

/// Block structure `[[r·id, q·id], [t·id, −r·id]]` on two stacked copies of
/// a three-dimensional space; an involution exactly when `r² + qt = 1`.
fn block_structure(r: &Scalar, q: &Scalar, t: &Scalar) -> Matrix {
    let mut j = Matrix::zeros(6, 6);
    for i in 0..3 {
        j.set(i, i, Poly::constant(r.clone()));
        j.set(i, 3 + i, Poly::constant(q.clone()));
        j.set(3 + i, i, Poly::constant(t.clone()));
        j.set(3 + i, 3 + i, Poly::constant(-r));
    }
    j
}

/// The fourteen-dimensional maximal model: eight-dimensional isotropy on a
/// six-dimensional complement split into its two module summands.
pub fn g2star() -> Result<HomogeneousModel> {
    let g = stored_algebra("g2star", "g2star")?;
    HomogeneousModel::new(g, (0..8).collect(), (8..14).collect(), Some(split_structure(3)))
}

/// The ten-dimensional submaximal model with four-dimensional isotropy.
pub fn sp4() -> Result<HomogeneousModel> {
    let g = stored_algebra("sp4-gl2", "sp4")?;
    HomogeneousModel::new(g, (0..4).collect(), (4..10).collect(), Some(split_structure(3)))
}

/// The product-of-rotations model with the two-parameter structure
/// `J(v, 0) = (r v, t v)`, `J(0, v) = ((1−r²)/t · v, −r v)`; `t = 0` falls
/// outside this chart and is served by [`su2cubed_limiting`].
pub fn su2cubed(r: &Scalar, t: &Scalar) -> Result<HomogeneousModel> {
    if t.is_zero() {
        return Err(Error::Degenerate(
            "t = 0 leaves the main chart; use the limiting structure".into(),
        ));
    }
    let g = stored_algebra("su2cubed", "su2cubed")?;
    let q = &(&Scalar::one() - &(r * r)) / t;
    HomogeneousModel::new(
        g,
        (0..3).collect(),
        (3..9).collect(),
        Some(block_structure(r, &q, t)),
    )
}

/// The boundary structures `J(v₁, v₂) = (±v₁ + s v₂, ∓v₂)` of the
/// product-of-rotations family.
pub fn su2cubed_limiting(plus: bool, s: &Scalar) -> Result<HomogeneousModel> {
    let g = stored_algebra("su2cubed", "su2cubed")?;
    let r = if plus {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    };
    HomogeneousModel::new(
        g,
        (0..3).collect(),
        (3..9).collect(),
        Some(block_structure(&r, s, &Scalar::zero())),
    )
}

/// The rotation group over a point: trivial isotropy, no para-complex
/// structure, bi-invariant geometry only.
pub fn su2_point() -> Result<HomogeneousModel> {
    let g = stored_algebra("su2-point", "su2")?;
    HomogeneousModel::new(g, Vec::new(), (0..3).collect(), None)
}

/// Six abelian directions with the standard splitting: every curvature map
/// vanishes, so this is the fully degenerate reference point.
pub fn flat_abelian() -> Result<HomogeneousModel> {
    let g = Arc::new(LieAlgebra::from_bracket_rules(
        "flat6",
        &["m1", "m2", "m3", "m4", "m5", "m6"],
        &[],
    )?);
    HomogeneousModel::new(g, Vec::new(), (0..6).collect(), Some(split_structure(3)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_model_builds_with_a_closed_isotropy_and_an_involution() {
        for model in [
            g2star().unwrap(),
            sp4().unwrap(),
            su2cubed(&Scalar::zero().clone(), &Scalar::from_int(3)).unwrap(),
            su2cubed_limiting(true, &Scalar::from_int(1)).unwrap(),
            flat_abelian().unwrap(),
        ] {
            let (plus, minus) = model.eigenspaces().unwrap();
            assert_eq!(plus.len(), 3);
            assert_eq!(minus.len(), 3);
        }
        let point = su2_point().unwrap();
        assert!(point.j().is_none());
        assert_eq!(point.m_dim(), 3);
    }

    #[test]
    fn the_main_chart_rejects_a_vanishing_lower_block() {
        assert!(matches!(
            su2cubed(&Scalar::one(), &Scalar::zero()),
            Err(Error::Degenerate(_))
        ));
    }
}

//! The stored bracket families: parametric gluing data `(φ, θ_m, θ_h)` for
//! each catalogued subalgebra, the recorded solutions, and the recorded
//! obstruction generators.
//!
//! Everything here is data entry. Each family is written exactly as its
//! bracket list is recorded — same parameter names, same coefficients — and
//! the test suites re-derive every claimed property (Jacobi flatness of
//! solutions, dimension splits, obstruction ideals) from this data rather
//! than trusting it.

use super::realizations::{self, Realization};
use super::{BracketFamily, CocycleFamily, FamilySolution};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Poly, Scalar};
use crate::extend::{Cocycle, ExtensionDatum, TwoForm};
use crate::liealg::LieAlgebra;

/// Split bracket rules `[a, b] = expr` over `g = h ⊕ m` into the
/// two-form pair `(θ_h, θ_m)`: coefficients on subalgebra coordinates are
/// the vertical part, coefficients on complement coordinates the horizontal
/// part. Expressions may mix both and carry polynomial coefficients.
fn theta_pair(r: &Realization, rules: &[(&str, &str, &str)]) -> Result<(TwoForm, TwoForm)> {
    let h_dim = r.h.dim();
    let m_dim = r.module.dim();
    let mut combined: Vec<String> = r.h.basis().to_vec();
    combined.extend(r.module.space().iter().cloned());
    let mut theta_h = TwoForm::zero(m_dim, h_dim);
    let mut theta_m = TwoForm::zero(m_dim, m_dim);
    for (a, b, expr) in rules {
        let i = coord(r, a)?;
        let j = coord(r, b)?;
        let coeffs = Poly::parse_combination(expr, &combined)?;
        theta_h.set(i, j, coeffs[..h_dim].to_vec());
        theta_m.set(i, j, coeffs[h_dim..].to_vec());
    }
    Ok((theta_h, theta_m))
}

fn coord(r: &Realization, name: &str) -> Result<usize> {
    r.module
        .space()
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| Error::Parse(format!("unknown module coordinate `{name}`")))
}

fn datum(r: &Realization, phi: Cocycle, rules: &[(&str, &str, &str)]) -> Result<ExtensionDatum> {
    let (theta_h, theta_m) = theta_pair(r, rules)?;
    Ok(ExtensionDatum {
        h: r.h.clone(),
        m: r.module.clone(),
        phi,
        theta_m,
        theta_h,
    })
}

/// A cocycle given column-wise: for each subalgebra index, the nonzero
/// columns `φ(x_i)(u_a)` as expressions in the subalgebra basis.
fn cocycle(h: &LieAlgebra, m_dim: usize, blocks: &[(usize, &[(usize, &str)])]) -> Result<Cocycle> {
    let h_dim = h.dim();
    let mut maps = vec![Matrix::zeros(h_dim, m_dim); h_dim];
    for (hi, cols) in blocks {
        for (mi, expr) in cols.iter() {
            let coeffs = Poly::parse_combination(expr, h.basis())?;
            for (k, c) in coeffs.into_iter().enumerate() {
                maps[*hi].set(k, *mi, c);
            }
        }
    }
    Cocycle::new(h_dim, m_dim, maps)
}

fn bindings(name: &'static str, pairs: &[(&str, &str)]) -> Result<FamilySolution> {
    let map = pairs
        .iter()
        .map(|(k, v)| Ok((k.to_string(), Poly::parse(v)?)))
        .collect::<Result<_>>()?;
    Ok(FamilySolution::Bindings { name, map })
}

fn relations(name: &'static str, gens: &[&str]) -> Result<FamilySolution> {
    Ok(FamilySolution::Relations {
        name,
        gens: polys(gens)?,
    })
}

fn polys(list: &[&str]) -> Result<Vec<Poly>> {
    list.iter().map(|s| Poly::parse(s)).collect()
}

/// The invariant bracket family on sl₃'s complement `V ⊕ V*`: cyclic
/// horizontal brackets weighted by `alpha1`, `alpha2` and a vertical part
/// weighted by `beta` pairing `v_i ⊗ th_j` to the trace-free matrix unit.
/// Jacobi reduces to the single relation `alpha1·alpha2 = (4/3)·beta`.
pub fn g2star(r: &Realization) -> Result<BracketFamily> {
    let rules: &[(&str, &str, &str)] = &[
        ("v1", "v2", "alpha1*th3"),
        ("v2", "v3", "alpha1*th1"),
        ("v3", "v1", "alpha1*th2"),
        ("th1", "th2", "alpha2*v3"),
        ("th2", "th3", "alpha2*v1"),
        ("th3", "th1", "alpha2*v2"),
        ("v1", "th1", "-(2/3)*beta*h1-(1/3)*beta*h2"),
        ("v2", "th2", "(1/3)*beta*h1-(1/3)*beta*h2"),
        ("v3", "th3", "(1/3)*beta*h1+(2/3)*beta*h2"),
        ("v1", "th2", "-beta*e12"),
        ("v1", "th3", "-beta*e13"),
        ("v2", "th1", "-beta*f21"),
        ("v2", "th3", "-beta*e23"),
        ("v3", "th1", "-beta*f31"),
        ("v3", "th2", "-beta*f32"),
    ];
    Ok(BracketFamily {
        name: "g2star",
        at_l: None,
        datum: datum(r, Cocycle::zero(r.h.dim(), r.module.dim()), rules)?,
        horizontal: vec!["alpha1", "alpha2"],
        vertical: vec!["beta"],
        solutions: vec![
            bindings("generic", &[("beta", "(3/4)*alpha1*alpha2")])?,
            bindings("alpha1-only", &[("beta", "0"), ("alpha2", "0")])?,
            bindings("alpha2-only", &[("beta", "0"), ("alpha1", "0")])?,
            bindings("normalized", &[("alpha1", "2"), ("alpha2", "2"), ("beta", "3")])?,
        ],
        recorded_residuals: polys(&["alpha1*alpha2-(4/3)*beta"])?,
    })
}

/// The seven-parameter family over the Levi `gl₂`: four horizontal
/// parameters `a1..a4` and three vertical ones `b1..b3`.
pub fn gl2(r: &Realization) -> Result<BracketFamily> {
    let rules: &[(&str, &str, &str)] = &[
        ("v1", "v2", "a1*si"),
        ("v1", "r", "-a3*th2"),
        ("v2", "r", "a3*th1"),
        ("r", "si", "b1*s"),
        ("v1", "th1", "-b2*h+b3*s"),
        ("v1", "th2", "-2*b2*e"),
        ("v2", "th1", "-2*b2*f"),
        ("v2", "th2", "b2*h+b3*s"),
        ("th1", "th2", "a2*r"),
        ("th1", "si", "-a4*v2"),
        ("th2", "si", "a4*v1"),
    ];
    Ok(BracketFamily {
        name: "gl2",
        at_l: None,
        datum: datum(r, Cocycle::zero(r.h.dim(), r.module.dim()), rules)?,
        horizontal: vec!["a1", "a2", "a3", "a4"],
        vertical: vec!["b1", "b2", "b3"],
        solutions: vec![
            relations(
                "main",
                &["a1*a4-a2*a3", "b1-a3*a4", "2*b2-a2*a3", "2*b3+a2*a3"],
            )?,
            bindings(
                "main-instance",
                &[
                    ("a1", "1"),
                    ("a2", "1"),
                    ("a3", "1"),
                    ("a4", "1"),
                    ("b1", "1"),
                    ("b2", "1/2"),
                    ("b3", "-1/2"),
                ],
            )?,
            bindings(
                "nilpotent-13",
                &[("a2", "0"), ("a4", "0"), ("b1", "0"), ("b2", "0"), ("b3", "0")],
            )?,
            bindings(
                "nilpotent-24",
                &[("a1", "0"), ("a3", "0"), ("b1", "0"), ("b2", "0"), ("b3", "0")],
            )?,
        ],
        recorded_residuals: Vec::new(),
    })
}

/// The nine-parameter family over `sl₂ ⋉ ℝ²` with untwisted module
/// structure: seven horizontal parameters and two vertical ones.
pub fn sl2_r2_untwisted(r: &Realization) -> Result<BracketFamily> {
    let rules: &[(&str, &str, &str)] = &[
        ("v1", "v2", "a1*w3"),
        ("v1", "v3", "-a1*w2"),
        ("v2", "v3", "a4*v1+a1*w1"),
        ("v2", "w2", "a6*v1"),
        ("w2", "w3", "a2*v1"),
        ("v1", "w1", "(a7+a6)*v1"),
        ("v2", "w1", "b1*x2+a3*w3+a7*v2"),
        ("v3", "w1", "-b1*x1-a3*w2+a7*v3"),
        ("v3", "w3", "a6*v1"),
        ("w1", "w2", "b2*x1+a5*w2+a2*v3"),
        ("w1", "w3", "b2*x2+a5*w3-a2*v2"),
    ];
    Ok(BracketFamily {
        name: "sl2-r2-phi0",
        at_l: None,
        datum: datum(r, Cocycle::zero(r.h.dim(), r.module.dim()), rules)?,
        horizontal: vec!["a1", "a2", "a3", "a4", "a5", "a6", "a7"],
        vertical: vec!["b1", "b2"],
        solutions: Vec::new(),
        recorded_residuals: Vec::new(),
    })
}

/// The cohomology-class generator for `sl₂ ⋉ ℝ²`: a cocycle vanishing on
/// the semisimple part, sending the abelian generators into `h` along the
/// dual coordinates of `V*`.
pub fn sl2_r2_cocycle(r: &Realization) -> Result<Cocycle> {
    // Subalgebra order (e, f, h, x1, x2); module order (v1..v3, w1..w3).
    cocycle(
        &r.h,
        r.module.dim(),
        &[
            (3, &[(3, "(1/3)*h"), (4, "(2/3)*e"), (5, "x1")]),
            (4, &[(3, "(2/3)*f"), (4, "-(1/3)*h"), (5, "x2")]),
        ],
    )
}

/// The seven-parameter affine family over `sl₂ ⋉ ℝ²` with the twisted
/// module structure of [`sl2_r2_cocycle`]. The constant terms are part of
/// the family, not a solution: they come from normalizing the cocycle
/// coefficient to 1.
pub fn sl2_r2_twisted(r: &Realization) -> Result<BracketFamily> {
    let rules: &[(&str, &str, &str)] = &[
        ("v1", "v3", "a1*x1+a2*v1"),
        ("v2", "v3", "a1*x2+a2*v2"),
        ("v1", "w1", "-(2/3)*v3-a7*w3+a7*h"),
        ("v1", "w2", "2*a7*e"),
        ("v1", "w3", "(1/3)*v1+2*a7*x1"),
        ("v2", "w1", "2*a7*f"),
        ("v2", "w2", "-(2/3)*v3-a7*w3-a7*h"),
        ("v2", "w3", "(1/3)*v2+2*a7*x2"),
        ("v3", "w1", "-a3*x2-a4*v2+3*a7*w1"),
        ("v3", "w2", "a3*x1+a4*v1+3*a7*w2"),
        ("v3", "w3", "-(2/3)*v3+2*a7*w3"),
        ("w1", "w2", "a5*v3+a6*w3"),
        ("w1", "w3", "-a5*v2-a6*x2-w1"),
        ("w2", "w3", "a5*v1+a6*x1-w2"),
    ];
    Ok(BracketFamily {
        name: "sl2-r2-phi1",
        at_l: None,
        datum: datum(r, sl2_r2_cocycle(r)?, rules)?,
        horizontal: Vec::new(),
        vertical: Vec::new(),
        solutions: vec![
            bindings(
                "recorded-family",
                &[
                    ("a1", "3*a7^2"),
                    ("a2", "4*a7"),
                    ("a3", "-(3/10)*a6*a7^2+(3/4)*a5*a7"),
                    ("a4", "-(3/5)*a7*a6-(1/2)*a5"),
                ],
            )?,
            // Solved from the reduced defect ideal of the rule table above;
            // see the `twisted_family_obstructions` integration test for the
            // reconciliation with the recorded generators.
            bindings(
                "corrected-family",
                &[
                    ("a1", "-3*a7^2"),
                    ("a2", "4*a7"),
                    ("a3", "(9/2)*a5*a7^2-(3/2)*a6*a7"),
                    ("a4", "-(9/2)*a5*a7-(1/2)*a6"),
                ],
            )?,
        ],
        recorded_residuals: polys(&[
            "-4*a7+3*a2",
            "a7^2+3*a1",
            "3*a5*a7+2*a4+a6",
            "a1*a4+2*a1*a6+a3*a7",
            "a4*a7+2*a6*a7-3*a3",
            "6*a1*a5-a4*a7-a3",
            "9*a3*a5+2*a4^2+5*a4*a6+2*a6^2",
        ])?,
    })
}

const S2_L_0: &[(&str, &str, &str)] = &[
    ("v1", "v2", "a1*w3"),
    ("v1", "v3", "a8*x1+a3*v1-a1*w2"),
    ("v2", "v3", "a8*x2+a3*v2+a1*w1"),
    ("v1", "w1", "(a7-a9)*w3"),
    ("v2", "w2", "(a7-a9)*w3"),
    ("v3", "w3", "a7*w3"),
    ("v3", "w1", "-a4*x2-a5*v2+a9*w1"),
    ("v3", "w2", "a4*x1+a5*v1+a9*w2"),
    ("w1", "w2", "a6*w3+a2*v3"),
    ("w1", "w3", "-a2*v2"),
    ("w2", "w3", "a2*v1"),
];

const S2_L_NEG_3_10: &[(&str, &str, &str)] = &[
    ("v1", "v2", "a1*w3"),
    ("v1", "v3", "-a1*w2"),
    ("v2", "v3", "a1*w1"),
    ("v3", "w2", "a3*w3"),
    ("w1", "w2", "a4*x2+a2*v3"),
    ("w1", "w3", "-a2*v2"),
    ("w2", "w3", "a2*v1"),
];

const S2_L_NEG_3_4: &[(&str, &str, &str)] = &[
    ("v1", "v2", "a1*w3"),
    ("v1", "v3", "a3*x2-a1*w2"),
    ("v2", "v3", "a1*w1"),
    ("v3", "w2", "a4*v2"),
    ("w1", "w2", "a2*v3"),
    ("w1", "w3", "-a2*v2"),
    ("w2", "w3", "a2*v1"),
];

const S2_L_NEG_3_2: &[(&str, &str, &str)] = &[
    ("v1", "v2", "a1*w3"),
    ("v1", "v3", "a6*v2-a1*w2"),
    ("v1", "w1", "a7*v2"),
    ("v1", "w2", "-a9*x2-a3*w3+a8*v1"),
    ("v2", "v3", "a1*w1"),
    ("v2", "w2", "(a7+a8)*v2"),
    ("v3", "w2", "a9*e+a3*w1+a8*v3"),
    ("v3", "w3", "a7*v2"),
    ("w1", "w2", "-a4*e-a5*w1+a2*v3"),
    ("w1", "w3", "-a2*v2"),
    ("w2", "w3", "a4*x2+a5*w3+a2*v1"),
];

const S2_L_NEG_1_2: &[(&str, &str, &str)] = &[
    ("v1", "v2", "a1*w3"),
    ("v1", "v3", "a4*w3-a1*w2"),
    ("v2", "v3", "a1*w1"),
    ("v1", "w1", "(a5-a7)*x2"),
    ("v1", "w2", "a7*x1"),
    ("v2", "w2", "a5*x2"),
    ("v3", "w1", "a7*e"),
    ("v3", "w2", "a6*x2+a7*t"),
    ("v3", "w3", "a5*x2"),
    ("w1", "w2", "a3*v2+a2*v3"),
    ("w1", "w3", "-a2*v2"),
    ("w2", "w3", "a2*v1"),
];

/// The five exceptional pencil values at which the `s²` case has a
/// nontrivial space of invariant brackets, each with its bracket list and
/// horizontal/vertical parameter split.
pub fn s2_exceptional() -> Result<Vec<BracketFamily>> {
    type Row = (
        &'static str,
        &'static str,
        &'static [(&'static str, &'static str, &'static str)],
        &'static [&'static str],
        &'static [&'static str],
    );
    let table: [Row; 5] = [
        (
            "l=0",
            "0",
            S2_L_0,
            &["a1", "a2", "a3", "a5", "a6", "a7", "a9"],
            &["a4", "a8"],
        ),
        ("l=-3/10", "-3/10", S2_L_NEG_3_10, &["a1", "a2", "a3"], &["a4"]),
        ("l=-3/4", "-3/4", S2_L_NEG_3_4, &["a1", "a2", "a4"], &["a3"]),
        (
            "l=-3/2",
            "-3/2",
            S2_L_NEG_3_2,
            &["a1", "a2", "a3", "a5", "a6", "a7", "a8"],
            &["a4", "a9"],
        ),
        (
            "l=-1/2",
            "-1/2",
            S2_L_NEG_1_2,
            &["a1", "a2", "a3", "a4"],
            &["a5", "a6", "a7"],
        ),
    ];
    table
        .into_iter()
        .map(|(name, l, rules, horizontal, vertical)| {
            let l = Scalar::parse(l)?;
            let r = realizations::s2_at(&l)?;
            Ok(BracketFamily {
                name,
                at_l: Some(l),
                datum: datum(&r, Cocycle::zero(r.h.dim(), r.module.dim()), rules)?,
                horizontal: horizontal.to_vec(),
                vertical: vertical.to_vec(),
                solutions: Vec::new(),
                recorded_residuals: Vec::new(),
            })
        })
        .collect()
}

/// The six-parameter cocycle family at the pencil value `l = 3/2`, where
/// the relevant cohomology jumps to dimension six. The extension
/// constraints force `c3 = c4 = c5 = c6 = 0` linearly and leave the
/// quadratic obstruction `c1·c2` on the surviving plane.
pub fn l32_cocycle_family() -> Result<CocycleFamily> {
    let l = Scalar::parse("3/2")?;
    let r = realizations::s2_at(&l)?;
    // Subalgebra order (t, e, x1, x2); module order (v1..v3, w1..w3).
    let phi = cocycle(
        &r.h,
        r.module.dim(),
        &[
            (
                1,
                &[
                    (0, "14*c2*e+4*c4*x1"),
                    (1, "5*c4*x2"),
                    (2, "-3*c4*t"),
                    (3, "29*c1*e+c3*x1"),
                    (4, "11*c1*t"),
                    (5, "17*c1*x2"),
                ],
            ),
            (
                2,
                &[
                    (0, "c6*e-29*c2*x1"),
                    (1, "-17*c2*x2"),
                    (2, "11*c2*t"),
                    (3, "4*c5*e-14*c1*x1"),
                    (4, "3*c5*t"),
                    (5, "5*c5*x2"),
                ],
            ),
            (
                3,
                &[
                    (0, "2*c2*x2"),
                    (2, "3*c2*e+c4*x1"),
                    (3, "-2*c1*x2"),
                    (4, "c5*e-3*c1*x1"),
                ],
            ),
        ],
    )?;
    Ok(CocycleFamily {
        name: "l=3/2",
        at_l: Some(l),
        phi,
        parameters: vec!["c1", "c2", "c3", "c4", "c5", "c6"],
        forced_zero: vec!["c3", "c4", "c5", "c6"],
        recorded_residuals: polys(&["c1*c2"])?,
    })
}

const L32_BASIS: [&str; 10] = ["t", "e", "x1", "x2", "v1", "v2", "v3", "w1", "w2", "w3"];

/// The one-parameter algebra obtained at `l = 3/2` from the normalization
/// `c1 = 0, c2 = 1`: the coordinates `w1, w2, w3` span an abelian
/// subalgebra, so one eigendistribution is flat.
pub fn l32_alpha_w_abelian() -> Result<LieAlgebra> {
    LieAlgebra::from_bracket_rules(
        "l32(c1=0,c2=1)",
        &L32_BASIS,
        &[
            ("v1", "v2", "alpha*w3-51*e-28*v2"),
            ("v1", "v3", "-alpha*w2-29*v3"),
            ("v2", "v3", "alpha*w1"),
            ("v1", "w1", "-20*w1"),
            ("v1", "w2", "11*w2"),
            ("v1", "w3", "9*w3"),
            ("v2", "w2", "-17*w1"),
            ("v3", "w3", "-20*w1"),
            ("t", "v2", "v2"),
            ("t", "v3", "-v3"),
            ("t", "w2", "-w2"),
            ("t", "w3", "w3"),
            ("e", "v1", "v2+14*e"),
            ("e", "w2", "-w1"),
            ("x1", "v1", "-29*x1"),
            ("x1", "v2", "-17*x2"),
            ("x1", "v3", "v1+11*t"),
            ("x1", "w1", "-w3"),
            ("x2", "v1", "2*x2"),
            ("x2", "v3", "v2+3*e"),
            ("x2", "w2", "-w3"),
            ("t", "e", "e"),
            ("t", "x1", "x1"),
            ("t", "x2", "2*x2"),
            ("e", "x1", "x2"),
        ],
    )
}

/// The companion normalization `c1 = 1, c2 = 0`: here `v1, v2, v3` span the
/// abelian subalgebra instead.
pub fn l32_alpha_v_abelian() -> Result<LieAlgebra> {
    LieAlgebra::from_bracket_rules(
        "l32(c1=1,c2=0)",
        &L32_BASIS,
        &[
            ("v1", "w1", "-20*v1"),
            ("v2", "w1", "9*v2"),
            ("v2", "w2", "-20*v1"),
            ("v3", "w1", "11*v3"),
            ("v3", "w3", "-17*v1"),
            ("w1", "w2", "alpha*v3+29*w2"),
            ("w1", "w3", "-alpha*v2+51*x1+28*w3"),
            ("w2", "w3", "alpha*v1"),
            ("t", "v2", "v2"),
            ("t", "v3", "-v3"),
            ("t", "w2", "-w2"),
            ("t", "w3", "w3"),
            ("e", "v1", "v2"),
            ("e", "w2", "-w1+11*t"),
            ("e", "w1", "29*e"),
            ("e", "w3", "17*x2"),
            ("x1", "v3", "v1"),
            ("x1", "w1", "-w3-14*x1"),
            ("x2", "v3", "v2"),
            ("x2", "w1", "-2*x2"),
            ("x2", "w2", "-w3-3*x1"),
            ("t", "e", "e"),
            ("t", "x1", "x1"),
            ("t", "x2", "2*x2"),
            ("e", "x1", "x2"),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extend::{cocycle_defect, reconstruct};

    fn substituted(family: &BracketFamily, solution: &str) -> ExtensionDatum {
        let sol = family
            .solutions
            .iter()
            .find(|s| s.name() == solution)
            .unwrap();
        let FamilySolution::Bindings { map, .. } = sol else {
            panic!("solution `{solution}` is relation-style");
        };
        family.datum.substitute(map)
    }

    #[test]
    fn the_generic_g2star_solution_is_jacobi_flat_symbolically() {
        let r = realizations::sl3().unwrap();
        let fam = g2star(&r).unwrap();
        let datum = substituted(&fam, "generic");
        let g = reconstruct(&datum, "g2star-generic").unwrap();
        assert!(g.is_lie_algebra(), "defect: {:?}", g.jacobi_defect());
        // The free family is *not* flat: its defect ideal is the recorded
        // relation.
        let free = reconstruct(&fam.datum, "g2star-free").unwrap();
        assert!(!free.is_lie_algebra());
    }

    #[test]
    fn the_normalized_g2star_point_is_fourteen_dimensional_and_flat() {
        let r = realizations::sl3().unwrap();
        let fam = g2star(&r).unwrap();
        let g = reconstruct(&substituted(&fam, "normalized"), "g2star").unwrap();
        assert_eq!(g.dim(), 14);
        assert!(g.is_lie_algebra());
    }

    #[test]
    fn both_nilpotent_g2star_branches_are_flat() {
        let r = realizations::sl3().unwrap();
        let fam = g2star(&r).unwrap();
        for name in ["alpha1-only", "alpha2-only"] {
            let g = reconstruct(&substituted(&fam, name), name).unwrap();
            assert!(g.is_lie_algebra());
        }
    }

    #[test]
    fn gl2_solutions_are_jacobi_flat() {
        let r = realizations::gl2().unwrap();
        let fam = gl2(&r).unwrap();
        for name in ["main-instance", "nilpotent-13", "nilpotent-24"] {
            let g = reconstruct(&substituted(&fam, name), name).unwrap();
            assert!(g.is_lie_algebra(), "{name} defect: {:?}", g.jacobi_defect());
        }
    }

    #[test]
    fn the_gl2_main_instance_is_simple_of_signature_6_4() {
        let r = realizations::gl2().unwrap();
        let fam = gl2(&r).unwrap();
        let g = reconstruct(&substituted(&fam, "main-instance"), "sp4-instance").unwrap();
        let card = g.identify(7).unwrap();
        assert_eq!(card.dim, 10);
        assert_eq!(card.killing_signature, (6, 4, 0));
        assert_eq!(card.label.as_deref(), Some("sp4_R"));
    }

    #[test]
    fn the_untwisted_sl2_r2_defect_contains_the_recorded_product() {
        let r = realizations::sl2_r2_phi0().unwrap();
        let fam = sl2_r2_untwisted(&r).unwrap();
        let g = reconstruct(&fam.datum, "phi0-free").unwrap();
        let bad = g
            .jacobi_defect()
            .into_iter()
            .find(|d| d.label == "[v2,w2,w3] -> w3")
            .expect("expected a residual at (v2, w2, w3)");
        let prod = Poly::parse("a1*a2").unwrap();
        assert!(
            bad.value == prod || bad.value == prod.neg(),
            "residual {} is not ±a1*a2",
            bad.value
        );
    }

    #[test]
    fn the_twisting_cocycle_twists_and_the_class_is_nonzero() {
        let r = realizations::sl2_r2_phi1().unwrap();
        let phi = sl2_r2_cocycle(&r).unwrap();
        assert!(cocycle_defect(&r.h, &r.module, &phi).is_empty());
        // The twisted module genuinely differs from the untwisted one.
        assert!(!phi.is_zero());
    }

    #[test]
    fn the_l32_cocycle_family_is_flat_for_all_coefficients() {
        let fam = l32_cocycle_family().unwrap();
        let l = Scalar::parse("3/2").unwrap();
        let r = realizations::s2_at(&l).unwrap();
        assert!(cocycle_defect(&r.h, &r.module, &fam.phi).is_empty());
        let mut params = fam.phi.parameters();
        params.sort();
        let names: Vec<&str> = params.iter().map(String::as_str).collect();
        assert_eq!(names, ["c1", "c2", "c3", "c4", "c5", "c6"]);
    }

    #[test]
    fn both_l32_normalizations_are_jacobi_flat_in_alpha() {
        let w = l32_alpha_w_abelian().unwrap();
        assert!(w.is_lie_algebra(), "defect: {:?}", w.jacobi_defect());
        let v = l32_alpha_v_abelian().unwrap();
        assert!(v.is_lie_algebra(), "defect: {:?}", v.jacobi_defect());
    }

    #[test]
    fn the_advertised_abelian_triples_are_really_abelian() {
        let w = l32_alpha_w_abelian().unwrap();
        for i in 7..10 {
            for j in 7..10 {
                assert!(w.bracket(i, j).iter().all(Poly::is_zero));
            }
        }
        let v = l32_alpha_v_abelian().unwrap();
        for i in 4..7 {
            for j in 4..7 {
                assert!(v.bracket(i, j).iter().all(Poly::is_zero));
            }
        }
    }

    #[test]
    fn exceptional_lists_carry_the_recorded_parameter_splits() {
        let fams = s2_exceptional().unwrap();
        let splits: Vec<(usize, usize)> = fams
            .iter()
            .map(|f| (f.horizontal.len(), f.vertical.len()))
            .collect();
        assert_eq!(splits, vec![(7, 2), (3, 1), (3, 1), (7, 2), (4, 3)]);
        // Vertical parameters really do multiply subalgebra coordinates
        // only, and horizontal ones complement coordinates only.
        for fam in &fams {
            let vert_params: Vec<String> = fam.datum.theta_h.flatten().iter().flat_map(|p| p.vars().to_vec()).collect();
            for h in &fam.horizontal {
                assert!(!vert_params.iter().any(|v| v == h), "{} leaked into the vertical part of {}", h, fam.name);
            }
            let horiz_params: Vec<String> = fam.datum.theta_m.flatten().iter().flat_map(|p| p.vars().to_vec()).collect();
            for v in &fam.vertical {
                assert!(!horiz_params.iter().any(|p| p == v), "{} leaked into the horizontal part of {}", v, fam.name);
            }
        }
    }

    #[test]
    fn every_exceptional_list_reconstructs_with_the_recorded_generic_defect() {
        // In every list [v1,v2] = a1·w3 and [w1,w3] = -a2·v2 while w1
        // commutes with both v1 and v2 modulo terms that cancel, so
        // Jac(v1,v2,w1) lands on v2 with coefficient a1·a2 — the product
        // whose vanishing forces one flat eigendistribution.
        let prod = Poly::parse("a1*a2").unwrap();
        for fam in s2_exceptional().unwrap() {
            let g = reconstruct(&fam.datum, fam.name).unwrap();
            let defect = g.jacobi_defect();
            let hit = defect
                .iter()
                .find(|d| d.label == "[v1,v2,w1] -> v2")
                .unwrap_or_else(|| panic!("{}: no residual at (v1,v2,w1)", fam.name));
            assert!(
                hit.value == prod || hit.value == prod.neg(),
                "{}: residual {} is not ±a1*a2",
                fam.name,
                hit.value
            );
        }
    }

    #[test]
    fn twisted_family_parameters_are_exactly_a1_to_a7() {
        let r = realizations::sl2_r2_phi1().unwrap();
        let fam = sl2_r2_twisted(&r).unwrap();
        let mut params: Vec<String> = fam
            .datum
            .theta_m
            .flatten()
            .iter()
            .chain(fam.datum.theta_h.flatten().iter())
            .flat_map(|p| p.vars().to_vec())
            .collect();
        params.sort();
        params.dedup();
        let names: Vec<&str> = params.iter().map(String::as_str).collect();
        assert_eq!(names, ["a1", "a2", "a3", "a4", "a5", "a6", "a7"]);
    }
}

//! The case catalog: every subalgebra in the classification with its
//! explicit matrix realization, module, stored bracket/cocycle families,
//! and the expected verdicts that the pipeline re-derives.
//!
//! Nothing in this module computes. It is the data spine connecting the
//! classification's inputs (realizations, families) to its recorded outputs
//! (expected records), and the case names double as the CLI's `--case`
//! vocabulary. Every expected value is re-derived by a test or a report
//! run; the catalog only says what the answer should be and which table it
//! came from.

pub mod families;
pub mod realizations;

pub use realizations::Realization;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Poly, Scalar};
use crate::extend::{reconstruct, Cocycle, ExtensionDatum};
use crate::liealg::LieAlgebra;

/// A parametric invariant-bracket family `θ = θ_h + θ_m` over one case,
/// with its parameter split, any recorded closed-form solutions, and the
/// recorded obstruction generators for the free family.
pub struct BracketFamily {
    pub name: &'static str,
    /// Pencil value the family lives at, when the case is parametric.
    pub at_l: Option<Scalar>,
    pub datum: ExtensionDatum,
    /// Parameters multiplying complement-valued terms.
    pub horizontal: Vec<&'static str>,
    /// Parameters multiplying subalgebra-valued terms.
    pub vertical: Vec<&'static str>,
    pub solutions: Vec<FamilySolution>,
    /// Recorded generators of the obstruction ideal, empty when the record
    /// keeps only the bracket list.
    pub recorded_residuals: Vec<Poly>,
}

/// A recorded solution of a family's closure conditions: either explicit
/// parameter bindings or, when the solution set is not a coordinate graph,
/// the ideal it satisfies.
pub enum FamilySolution {
    Bindings {
        name: &'static str,
        map: BTreeMap<String, Poly>,
    },
    Relations {
        name: &'static str,
        gens: Vec<Poly>,
    },
}

impl FamilySolution {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySolution::Bindings { name, .. } => name,
            FamilySolution::Relations { name, .. } => name,
        }
    }

    /// The binding map, when the solution is binding-style.
    pub fn bindings(&self) -> Option<&BTreeMap<String, Poly>> {
        match self {
            FamilySolution::Bindings { map, .. } => Some(map),
            FamilySolution::Relations { .. } => None,
        }
    }
}

/// A parametric family of twisting cocycles, with the parameters the
/// extension constraints force to zero and the recorded residual
/// obstruction on the survivors.
pub struct CocycleFamily {
    pub name: &'static str,
    pub at_l: Option<Scalar>,
    pub phi: Cocycle,
    pub parameters: Vec<&'static str>,
    pub forced_zero: Vec<&'static str>,
    pub recorded_residuals: Vec<Poly>,
}

/// A fully assembled algebra attached to a case (a reconstructed model or
/// a recorded one-parameter family).
pub struct NamedAlgebra {
    pub name: &'static str,
    pub algebra: Arc<LieAlgebra>,
}

/// An expected value together with the table or argument it was recorded
/// from. Claims are never consulted by the computation path; they exist so
/// reports can diff derived values against the record.
pub struct Claim<T> {
    pub value: T,
    pub source: &'static str,
}

fn claim<T>(value: T, source: &'static str) -> Option<Claim<T>> {
    Some(Claim { value, source })
}

/// Expected first-cohomology data: a single dimension, or a
/// generic/exceptional profile over a pencil parameter.
pub enum H1Expectation {
    Dim(usize),
    Profile {
        generic: usize,
        exceptional: Vec<(Scalar, usize)>,
    },
}

/// The recorded verdicts for one case. Every field is optional: a case
/// carries exactly the claims the record makes about it.
#[derive(Default)]
pub struct Expected {
    /// dim H¹(h, Hom(m, h)).
    pub h1: Option<Claim<H1Expectation>>,
    /// (horizontal, vertical) dimensions of the equivariant bracket space.
    pub bracket_dims: Option<Claim<(usize, usize)>>,
    /// Label from the identification table for the reconstructed algebra.
    pub identification: Option<Claim<&'static str>>,
    /// Killing signature (plus, minus) of the reconstructed algebra.
    pub killing_signature: Option<Claim<(usize, usize)>>,
    /// Whether the model's eigendistribution curvatures are both invertible.
    pub nondegenerate: Option<Claim<bool>>,
    /// "strict", "non-strict", or "no".
    pub nearly_para_kahler: Option<Claim<&'static str>>,
    pub einstein: Option<Claim<bool>>,
    pub einstein_constant: Option<Claim<Scalar>>,
    /// Dimension of the space of compatible invariant metrics.
    pub metric_dim: Option<Claim<usize>>,
    /// (dim (m*⊗Λ²m*)^h, dim (Λ³m*)^h).
    pub trivial_summands: Option<Claim<(usize, usize)>>,
}

/// One row of the catalog.
pub struct CatalogCase {
    pub name: &'static str,
    pub summary: &'static str,
    /// Explicit matrices for h and its module; absent for the one case
    /// that is a bare parameter count.
    pub realization: Option<Realization>,
    pub families: Vec<BracketFamily>,
    pub cocycles: Vec<CocycleFamily>,
    pub algebras: Vec<NamedAlgebra>,
    pub expected: Expected,
}

/// Every case name, in report order. These are the CLI's `--case` values.
pub const CASE_NAMES: [&str; 17] = [
    "sl3",
    "p1",
    "p2",
    "p12",
    "sl2-r2-phi0",
    "sl2-r2-phi1",
    "gl2",
    "rz-t-neg",
    "rz-t-null",
    "rz-t-pos",
    "rz-b2-r",
    "s2-semidirect",
    "g2star",
    "sp4-gl2",
    "su2cubed",
    "su2-point",
    "borel-bound",
];

pub fn list_cases() -> Result<Vec<CatalogCase>> {
    CASE_NAMES.iter().map(|n| by_name(n)).collect()
}

pub fn by_name(name: &str) -> Result<CatalogCase> {
    match name {
        "sl3" => case_sl3(),
        "p1" => case_p1(),
        "p2" => case_p2(),
        "p12" => case_p12(),
        "sl2-r2-phi0" => case_sl2_r2_phi0(),
        "sl2-r2-phi1" => case_sl2_r2_phi1(),
        "gl2" => case_gl2(),
        "rz-t-neg" => case_rz(name),
        "rz-t-null" => case_rz(name),
        "rz-t-pos" => case_rz(name),
        "rz-b2-r" => case_rz_b2_r(),
        "s2-semidirect" => case_s2(),
        "g2star" => case_g2star(),
        "sp4-gl2" => case_sp4_gl2(),
        "su2cubed" => case_su2cubed(),
        "su2-point" => case_su2_point(),
        "borel-bound" => case_borel_bound(),
        _ => Err(Error::UnknownCase(name.to_string())),
    }
}

fn h1_zero() -> Option<Claim<H1Expectation>> {
    claim(H1Expectation::Dim(0), "cohomology table")
}

fn case_sl3() -> Result<CatalogCase> {
    let r = realizations::sl3()?;
    let fam = families::g2star(&r)?;
    Ok(CatalogCase {
        name: "sl3",
        summary: "the full traceless algebra acting on V plus its dual; carries the three-parameter invariant bracket family",
        realization: Some(r),
        families: vec![fam],
        cocycles: Vec::new(),
        algebras: Vec::new(),
        expected: Expected {
            bracket_dims: claim((2, 1), "bracket-space dimension list"),
            ..Expected::default()
        },
    })
}

fn case_p1() -> Result<CatalogCase> {
    Ok(CatalogCase {
        name: "p1",
        summary: "stabilizer of a line in V (dim 6)",
        realization: Some(realizations::p1()?),
        families: Vec::new(),
        cocycles: Vec::new(),
        algebras: Vec::new(),
        expected: Expected {
            h1: h1_zero(),
            ..Expected::default()
        },
    })
}

fn case_p2() -> Result<CatalogCase> {
    Ok(CatalogCase {
        name: "p2",
        summary: "stabilizer of a plane in V: the image of p1 under negative transpose (dim 6)",
        realization: Some(realizations::p2()?),
        families: Vec::new(),
        cocycles: Vec::new(),
        algebras: Vec::new(),
        expected: Expected {
            h1: h1_zero(),
            ..Expected::default()
        },
    })
}

fn case_p12() -> Result<CatalogCase> {
    Ok(CatalogCase {
        name: "p12",
        summary: "stabilizer of a full flag: a line inside a plane (dim 5)",
        realization: Some(realizations::p12()?),
        families: Vec::new(),
        cocycles: Vec::new(),
        algebras: Vec::new(),
        expected: Expected {
            h1: h1_zero(),
            ..Expected::default()
        },
    })
}

fn case_sl2_r2_phi0() -> Result<CatalogCase> {
    let r = realizations::sl2_r2_phi0()?;
    let fam = families::sl2_r2_untwisted(&r)?;
    Ok(CatalogCase {
        name: "sl2-r2-phi0",
        summary: "sl2 acting on a two-dimensional abelian radical, untwisted module (dim 5)",
        realization: Some(r),
        families: vec![fam],
        cocycles: Vec::new(),
        algebras: Vec::new(),
        expected: Expected {
            h1: claim(H1Expectation::Dim(1), "cohomology table"),
            bracket_dims: claim((7, 2), "bracket-space dimension list"),
            ..Expected::default()
        },
    })
}

fn case_sl2_r2_phi1() -> Result<CatalogCase> {
    let r = realizations::sl2_r2_phi1()?;
    let phi = families::sl2_r2_cocycle(&r)?;
    let fam = families::sl2_r2_twisted(&r)?;
    Ok(CatalogCase {
        name: "sl2-r2-phi1",
        summary: "the same subalgebra with the module twisted by the generating cohomology class (dim 5)",
        realization: Some(r),
        families: vec![fam],
        cocycles: vec![CocycleFamily {
            name: "phi",
            at_l: None,
            phi,
            parameters: Vec::new(),
            forced_zero: Vec::new(),
            recorded_residuals: Vec::new(),
        }],
        algebras: Vec::new(),
        expected: Expected {
            h1: claim(H1Expectation::Dim(1), "cohomology table"),
            ..Expected::default()
        },
    })
}

fn case_gl2() -> Result<CatalogCase> {
    let r = realizations::gl2()?;
    let fam = families::gl2(&r)?;
    Ok(CatalogCase {
        name: "gl2",
        summary: "the reductive dim-4 subalgebra: sl2 plus the grading element",
        realization: Some(r),
        families: vec![fam],
        cocycles: Vec::new(),
        algebras: Vec::new(),
        expected: Expected {
            h1: h1_zero(),
            bracket_dims: claim((4, 3), "bracket-space dimension list"),
            ..Expected::default()
        },
    })
}

fn case_rz(name: &str) -> Result<CatalogCase> {
    let (name, summary, r) = match name {
        "rz-t-neg" => (
            "rz-t-neg",
            "grading element plus a rotation generator (tr t² < 0) on the abelian part",
            realizations::rz_t_neg()?,
        ),
        "rz-t-null" => (
            "rz-t-null",
            "grading element plus a nilpotent generator (tr t² = 0) on the abelian part",
            realizations::rz_t_null()?,
        ),
        "rz-t-pos" => (
            "rz-t-pos",
            "grading element plus a boost generator (tr t² > 0) on the abelian part",
            realizations::rz_t_pos()?,
        ),
        _ => return Err(Error::UnknownCase(name.to_string())),
    };
    Ok(CatalogCase {
        name,
        summary,
        realization: Some(r),
        families: Vec::new(),
        cocycles: Vec::new(),
        algebras: Vec::new(),
        expected: Expected {
            h1: h1_zero(),
            ..Expected::default()
        },
    })
}

fn case_rz_b2_r() -> Result<CatalogCase> {
    Ok(CatalogCase {
        name: "rz-b2-r",
        summary: "grading element plus the borel of sl2, acting on a line (dim 4)",
        realization: Some(realizations::rz_b2_r()?),
        families: Vec::new(),
        cocycles: Vec::new(),
        algebras: Vec::new(),
        expected: Expected {
            h1: h1_zero(),
            ..Expected::default()
        },
    })
}

fn case_s2() -> Result<CatalogCase> {
    let r = realizations::s2_semidirect()?;
    let exceptional = [
        ("9/2", 1),
        ("3", 1),
        ("3/2", 6),
        ("9/10", 1),
        ("3/4", 1),
        ("0", 1),
        ("-3/10", 1),
        ("-3/4", 1),
        ("-3/2", 1),
    ]
    .into_iter()
    .map(|(l, d)| Ok((Scalar::parse(l)?, d)))
    .collect::<Result<Vec<_>>>()?;
    Ok(CatalogCase {
        name: "s2-semidirect",
        summary: "the solvable pencil: the nonabelian 2-dim algebra extended by weight-l translations (dim 4, parametric)",
        realization: Some(r),
        families: families::s2_exceptional()?,
        cocycles: vec![families::l32_cocycle_family()?],
        algebras: vec![
            NamedAlgebra {
                name: "l32-w-abelian",
                algebra: Arc::new(families::l32_alpha_w_abelian()?),
            },
            NamedAlgebra {
                name: "l32-v-abelian",
                algebra: Arc::new(families::l32_alpha_v_abelian()?),
            },
        ],
        expected: Expected {
            h1: claim(
                H1Expectation::Profile {
                    generic: 0,
                    exceptional,
                },
                "cohomology table",
            ),
            ..Expected::default()
        },
    })
}

fn case_g2star() -> Result<CatalogCase> {
    let r = realizations::sl3()?;
    let fam = families::g2star(&r)?;
    let normalized = fam
        .solutions
        .iter()
        .find(|s| s.name() == "normalized")
        .and_then(FamilySolution::bindings)
        .expect("g2star stores a normalized binding");
    let model = reconstruct(&fam.datum.substitute(normalized), "g2star")?;
    Ok(CatalogCase {
        name: "g2star",
        summary: "the maximal model: the normalized bracket family closes to the split exceptional algebra",
        realization: Some(r),
        families: vec![fam],
        cocycles: Vec::new(),
        algebras: vec![NamedAlgebra {
            name: "g2star",
            algebra: Arc::new(model),
        }],
        expected: Expected {
            identification: claim("g2_split", "identification table"),
            killing_signature: claim((8, 6), "identification table"),
            nondegenerate: claim(true, "geometry summary"),
            nearly_para_kahler: claim("strict", "geometry summary"),
            metric_dim: claim(1, "geometry summary"),
            trivial_summands: claim((2, 2), "invariant dimension count"),
            ..Expected::default()
        },
    })
}

fn case_sp4_gl2() -> Result<CatalogCase> {
    let r = realizations::gl2()?;
    let fam = families::gl2(&r)?;
    let instance = fam
        .solutions
        .iter()
        .find(|s| s.name() == "main-instance")
        .and_then(FamilySolution::bindings)
        .expect("gl2 stores a main-instance binding");
    let model = reconstruct(&fam.datum.substitute(instance), "sp4")?;
    Ok(CatalogCase {
        name: "sp4-gl2",
        summary: "the submaximal model: an instance of the main gl2 solution branch",
        realization: Some(r),
        families: vec![fam],
        cocycles: Vec::new(),
        algebras: vec![NamedAlgebra {
            name: "sp4",
            algebra: Arc::new(model),
        }],
        expected: Expected {
            identification: claim("sp4_R", "identification table"),
            killing_signature: claim((6, 4), "identification table"),
            nondegenerate: claim(true, "geometry summary"),
            nearly_para_kahler: claim("strict", "geometry summary"),
            metric_dim: claim(1, "geometry summary"),
            trivial_summands: claim((4, 2), "invariant dimension count"),
            ..Expected::default()
        },
    })
}

fn case_su2cubed() -> Result<CatalogCase> {
    Ok(CatalogCase {
        name: "su2cubed",
        summary: "the triple product with diagonal isotropy and its (r,t) almost-product family",
        realization: Some(realizations::su2_diagonal()?),
        families: Vec::new(),
        cocycles: Vec::new(),
        algebras: vec![NamedAlgebra {
            name: "su2cubed",
            algebra: Arc::new(realizations::su2_cubed()?),
        }],
        expected: Expected {
            nearly_para_kahler: claim("no", "geometry summary"),
            einstein: claim(false, "geometry summary"),
            metric_dim: claim(1, "geometry summary"),
            ..Expected::default()
        },
    })
}

fn case_su2_point() -> Result<CatalogCase> {
    Ok(CatalogCase {
        name: "su2-point",
        summary: "the rotation group as a homogeneous space of itself: the bi-invariant curvature oracle",
        realization: Some(realizations::trivial_isotropy()?),
        families: Vec::new(),
        cocycles: Vec::new(),
        algebras: vec![NamedAlgebra {
            name: "su2",
            algebra: Arc::new(LieAlgebra::from_bracket_rules(
                "su2",
                &["e1", "e2", "e3"],
                &[("e1", "e2", "e3"), ("e2", "e3", "e1"), ("e3", "e1", "e2")],
            )?),
        }],
        expected: Expected {
            einstein: claim(true, "curvature oracle"),
            einstein_constant: claim(Scalar::parse("1/4")?, "curvature oracle"),
            ..Expected::default()
        },
    })
}

fn case_borel_bound() -> Result<CatalogCase> {
    Ok(CatalogCase {
        name: "borel-bound",
        summary: "parameter count bounding the isotropy of any larger-symmetry model by 3",
        realization: None,
        families: Vec::new(),
        cocycles: Vec::new(),
        algebras: Vec::new(),
        expected: Expected::default(),
    })
}

// --- the isotropy parameter bound -----------------------------------------

/// The block-triangular isotropy action with its elimination chain: the
/// free parameter count, then the count after each forced-vanishing row.
pub struct BorelBound {
    pub matrix: Matrix,
    /// Parameter counts along the elimination chain, starting free.
    pub chain: Vec<usize>,
    pub final_dim: usize,
}

/// Build the 6×6 block action of the isotropy on Δ₊ ⊕ Δ₋ with parameters
/// a1..a5, impose the two rows forced to vanish by the orbit structure (the
/// last row of the Δ₊ block, then the first row of the Δ₋ block), and count
/// what survives. The result 3 caps the isotropy dimension: together with
/// the 5-dimensional orbit bound it keeps every symmetry algebra below
/// dimension 9.
pub fn borel_bound_case() -> Result<BorelBound> {
    let a = |i: usize| Poly::var(&format!("a{i}"));
    let zero = Poly::zero();
    let plus = Matrix::from_rows(vec![
        vec![a(1), a(2), a(3)],
        vec![zero.clone(), a(1).add(&a(5)).neg(), a(4)],
        vec![zero.clone(), zero.clone(), a(5)],
    ])?;
    let minus = Matrix::from_rows(vec![
        vec![a(1).neg(), zero.clone(), zero.clone()],
        vec![a(2).neg(), a(1).add(&a(5)), zero.clone()],
        vec![a(3).neg(), a(4).neg(), a(5).neg()],
    ])?;
    let z3 = Matrix::zeros(3, 3);
    let matrix = Matrix::block2(&plus, &z3, &z3, &minus)?;
    let mut chain = vec![matrix.parameters().len()];

    // Rows forced to vanish: each surviving entry is ±(one parameter), so
    // imposing the row zeroes those parameters.
    let mut current = matrix.clone();
    for row in [2usize, 3] {
        let mut kill = BTreeMap::new();
        for j in 0..current.cols() {
            let entry = current.get(row, j);
            if !entry.is_zero() {
                let vars = entry.vars();
                if vars.len() != 1 || entry.total_degree() != 1 {
                    return Err(Error::Degenerate(format!(
                        "row condition at ({row},{j}) is not linear in one parameter: {entry}"
                    )));
                }
                kill.insert(vars[0].clone(), Poly::zero());
            }
        }
        current = current.substitute(&kill);
        chain.push(current.parameters().len());
    }

    let final_dim = *chain.last().expect("chain is nonempty");
    Ok(BorelBound {
        matrix,
        chain,
        final_dim,
    })
}

// --- JSON export -----------------------------------------------------------

fn matrix_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| Value::String(m.get(i, j).to_string()))
                .collect()
        })
        .collect();
    Value::Array(rows)
}

fn claim_json<T, F: Fn(&T) -> Value>(c: &Option<Claim<T>>, f: F) -> Value {
    match c {
        None => Value::Null,
        Some(Claim { value, source }) => json!({ "value": f(value), "source": source }),
    }
}

fn expected_json(e: &Expected) -> Value {
    json!({
        "h1": claim_json(&e.h1, |v| match v {
            H1Expectation::Dim(d) => json!({ "dim": d }),
            H1Expectation::Profile { generic, exceptional } => json!({
                "generic": generic,
                "exceptional": exceptional
                    .iter()
                    .map(|(l, d)| json!([l.to_string(), d]))
                    .collect::<Vec<_>>(),
            }),
        }),
        "bracket_dims": claim_json(&e.bracket_dims, |(h, v)| json!([h, v])),
        "identification": claim_json(&e.identification, |s| json!(s)),
        "killing_signature": claim_json(&e.killing_signature, |(p, m)| json!([p, m])),
        "nondegenerate": claim_json(&e.nondegenerate, |b| json!(b)),
        "nearly_para_kahler": claim_json(&e.nearly_para_kahler, |s| json!(s)),
        "einstein": claim_json(&e.einstein, |b| json!(b)),
        "einstein_constant": claim_json(&e.einstein_constant, |s| json!(s.to_string())),
        "metric_dim": claim_json(&e.metric_dim, |d| json!(d)),
        "trivial_summands": claim_json(&e.trivial_summands, |(a, b)| json!([a, b])),
    })
}

fn solution_json(s: &FamilySolution) -> Value {
    match s {
        FamilySolution::Bindings { name, map } => json!({
            "name": name,
            "kind": "bindings",
            "map": map.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>(),
        }),
        FamilySolution::Relations { name, gens } => json!({
            "name": name,
            "kind": "relations",
            "gens": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }),
    }
}

fn family_json(f: &BracketFamily) -> Value {
    json!({
        "name": f.name,
        "at_l": f.at_l.as_ref().map(|l| l.to_string()),
        "horizontal": f.horizontal,
        "vertical": f.vertical,
        "solutions": f.solutions.iter().map(solution_json).collect::<Vec<_>>(),
        "recorded_residuals": f.recorded_residuals.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

fn cocycle_json(c: &CocycleFamily) -> Value {
    json!({
        "name": c.name,
        "at_l": c.at_l.as_ref().map(|l| l.to_string()),
        "parameters": c.parameters,
        "forced_zero": c.forced_zero,
        "recorded_residuals": c.recorded_residuals.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

pub fn case_json(case: &CatalogCase) -> Value {
    let realization = case.realization.as_ref().map(|r| {
        json!({
            "h": serde_json::to_value(r.h.as_ref()).expect("algebra serializes"),
            "embedding": r.embedding.iter().map(matrix_json).collect::<Vec<_>>(),
            "module_space": r.module.space(),
        })
    });
    json!({
        "name": case.name,
        "summary": case.summary,
        "realization": realization,
        "families": case.families.iter().map(family_json).collect::<Vec<_>>(),
        "cocycles": case.cocycles.iter().map(cocycle_json).collect::<Vec<_>>(),
        "algebras": case.algebras.iter().map(|a| json!({
            "name": a.name,
            "algebra": serde_json::to_value(a.algebra.as_ref()).expect("algebra serializes"),
        })).collect::<Vec<_>>(),
        "expected": expected_json(&case.expected),
    })
}

/// The whole catalog as one JSON array, in report order.
pub fn catalog_json() -> Result<Value> {
    let cases = list_cases()?;
    Ok(Value::Array(cases.iter().map(case_json).collect()))
}

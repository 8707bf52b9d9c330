//! JSON forms of the library types, in `f64`.
//!
//! Complex scalars are `[re, im]` pairs and matrices are row-major nested
//! arrays of them. Every loader validates through the ordinary constructors,
//! so a file that loads is as trustworthy as a value built in code.

use serde::{Deserialize, Serialize};

use crate::basis::{BasisKind, DegreeGradedBasis, PolyBasis, ThreeTermBasis};
use crate::error::{Error, Result};
use crate::linearize::{Family, Pencil, PencilMeta, TransformTrace};
use crate::ratmodel::{
    HermitianRealization, PoleResidue, PolyMat, RationalMatrix, StateSpace, StrictlyProper, Structure,
    SymmetricRealization,
};
use crate::realize::{from_pole_residue, MarkovSequence};
use crate::scalar::{CMat, CVec, C};
use crate::solve::{pair_residual, SolveReport};

pub type JCx = [f64; 2];
pub type JMat = Vec<Vec<JCx>>;
pub type JVec = Vec<JCx>;

pub fn cx_to_json(z: C<f64>) -> JCx {
    [z.re, z.im]
}

pub fn cx_from_json(z: JCx) -> C<f64> {
    C::new(z[0], z[1])
}

pub fn mat_to_json(m: &CMat<f64>) -> JMat {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| cx_to_json(m[(i, j)])).collect()).collect()
}

/// Row-major nested arrays; all rows must have equal length.
pub fn mat_from_json(m: &JMat) -> Result<CMat<f64>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::ShapeMismatch("matrix rows have different lengths".into()));
    }
    Ok(CMat::from_fn(rows, cols, |i, j| cx_from_json(m[i][j])))
}

pub fn vec_to_json(v: &CVec<f64>) -> JVec {
    v.iter().copied().map(cx_to_json).collect()
}

pub fn vec_from_json(v: &JVec) -> CVec<f64> {
    CVec::from_iterator(v.len(), v.iter().copied().map(cx_from_json))
}

fn cxs(v: &[C<f64>]) -> JVec {
    v.iter().copied().map(cx_to_json).collect()
}

fn from_cxs(v: &[JCx]) -> Vec<C<f64>> {
    v.iter().copied().map(cx_from_json).collect()
}

/// Basis description. For the standard kinds the coefficient lists may be
/// omitted and are then generated for the degree at hand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alpha: JVec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub beta: JVec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gamma: JVec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub beta_table: Vec<JVec>,
}

impl BasisJson {
    pub fn from_basis(b: &PolyBasis<f64>) -> Self {
        match b {
            PolyBasis::ThreeTerm(t) => Self {
                kind: t.kind.name().into(),
                alpha: cxs(&t.alpha),
                beta: cxs(&t.beta),
                gamma: cxs(&t.gamma),
                beta_table: Vec::new(),
            },
            PolyBasis::DegreeGraded(d) => Self {
                kind: "degree_graded".into(),
                alpha: cxs(&d.alpha),
                beta: Vec::new(),
                gamma: Vec::new(),
                beta_table: d.beta.iter().map(|r| cxs(r)).collect(),
            },
        }
    }

    /// `k` is the degree the basis must support when coefficients are generated.
    pub fn to_basis(&self, k: usize) -> Result<PolyBasis<f64>> {
        if self.kind == "degree_graded" {
            let beta = self.beta_table.iter().map(|r| from_cxs(r)).collect();
            return Ok(DegreeGradedBasis::new(from_cxs(&self.alpha), beta)?.into());
        }
        let kind = BasisKind::parse(&self.kind)?;
        if self.alpha.is_empty() && kind != BasisKind::Custom {
            return Ok(ThreeTermBasis::standard(kind, k.max(1))?.into());
        }
        Ok(ThreeTermBasis::new(kind, from_cxs(&self.alpha), from_cxs(&self.beta), from_cxs(&self.gamma))?.into())
    }
}

/// Strictly proper part, tagged by `form`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum SpJson {
    #[default]
    Zero,
    StateSpace {
        a: JMat,
        b: JMat,
        c: JMat,
    },
    Symmetric {
        s1: JMat,
        s2: JMat,
        w: JMat,
    },
    Hermitian {
        h1: JMat,
        h2: JMat,
        w: JMat,
    },
    PoleResidue {
        poles: JVec,
        residues: Vec<JMat>,
    },
}

impl SpJson {
    pub fn from_sp(sp: &StrictlyProper<f64>) -> Self {
        match sp {
            StrictlyProper::Zero => SpJson::Zero,
            StrictlyProper::StateSpace(s) => Self::from_state_space(s),
            StrictlyProper::Symmetric(s) => Self::from_symmetric(s),
            StrictlyProper::Hermitian(h) => Self::from_hermitian(h),
        }
    }

    pub fn from_state_space(s: &StateSpace<f64>) -> Self {
        SpJson::StateSpace { a: mat_to_json(&s.a), b: mat_to_json(&s.b), c: mat_to_json(&s.c) }
    }

    pub fn from_symmetric(s: &SymmetricRealization<f64>) -> Self {
        SpJson::Symmetric { s1: mat_to_json(&s.s1), s2: mat_to_json(&s.s2), w: mat_to_json(&s.w) }
    }

    pub fn from_hermitian(h: &HermitianRealization<f64>) -> Self {
        SpJson::Hermitian { h1: mat_to_json(&h.h1), h2: mat_to_json(&h.h2), w: mat_to_json(&h.w) }
    }

    /// `m` fixes the shape of empty (order 0) parts. Pole-residue data is
    /// converted to a minimal state-space realization with `tol`.
    pub fn to_sp(&self, m: usize, tol: f64) -> Result<StrictlyProper<f64>> {
        let empty = |a: &JMat| a.is_empty();
        Ok(match self {
            SpJson::Zero => StrictlyProper::Zero,
            SpJson::StateSpace { a, .. } if empty(a) => StrictlyProper::Zero,
            SpJson::StateSpace { a, b, c } => {
                StrictlyProper::StateSpace(StateSpace::new(mat_from_json(a)?, mat_from_json(b)?, mat_from_json(c)?)?)
            }
            SpJson::Symmetric { s1, .. } if empty(s1) => StrictlyProper::Zero,
            SpJson::Symmetric { s1, s2, w } => StrictlyProper::Symmetric(SymmetricRealization {
                s1: mat_from_json(s1)?,
                s2: mat_from_json(s2)?,
                w: mat_from_json(w)?,
            }),
            SpJson::Hermitian { h1, .. } if empty(h1) => StrictlyProper::Zero,
            SpJson::Hermitian { h1, h2, w } => StrictlyProper::Hermitian(HermitianRealization {
                h1: mat_from_json(h1)?,
                h2: mat_from_json(h2)?,
                w: mat_from_json(w)?,
            }),
            SpJson::PoleResidue { poles, .. } if poles.is_empty() => StrictlyProper::Zero,
            SpJson::PoleResidue { poles, residues } => {
                let pr = PoleResidue {
                    poles: from_cxs(poles),
                    residues: residues.iter().map(mat_from_json).collect::<Result<_>>()?,
                };
                if pr.residues.iter().any(|r| r.shape() != (m, m)) {
                    return Err(Error::ShapeMismatch("residues must match the size of D".into()));
                }
                StrictlyProper::StateSpace(from_pole_residue(&pr, tol)?)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub basis: BasisJson,
    pub poly_coeffs: Vec<JMat>,
    #[serde(default)]
    pub sp: SpJson,
    #[serde(default = "general")]
    pub structure: String,
}

fn general() -> String {
    "general".into()
}

pub fn parse_structure(s: &str) -> Result<Structure> {
    match s {
        "general" => Ok(Structure::General),
        "symmetric" => Ok(Structure::Symmetric),
        "hermitian" => Ok(Structure::Hermitian),
        other => Err(Error::Input(format!("unknown structure '{other}'"))),
    }
}

impl RationalJson {
    pub fn from_rational(g: &RationalMatrix<f64>) -> Self {
        Self {
            basis: BasisJson::from_basis(&g.poly.basis),
            poly_coeffs: g.poly.coeffs.iter().map(mat_to_json).collect(),
            sp: SpJson::from_sp(&g.sp),
            structure: g.structure.name().into(),
        }
    }

    pub fn to_rational(&self, tol_rank: f64) -> Result<RationalMatrix<f64>> {
        let coeffs: Vec<CMat<f64>> = self.poly_coeffs.iter().map(mat_from_json).collect::<Result<_>>()?;
        let k = coeffs.len().saturating_sub(1);
        let basis = self.basis.to_basis(k)?;
        let poly = PolyMat::new(basis, coeffs)?;
        let sp = self.sp.to_sp(poly.m(), tol_rank)?;
        RationalMatrix::new(poly, sp, parse_structure(&self.structure)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformJson {
    pub left: JMat,
    pub right: JMat,
    pub structured: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetaJson {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ansatz_v: Option<JVec>,
    pub basis: BasisJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<TransformJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PencilJson {
    #[serde(rename = "X")]
    pub x: JMat,
    #[serde(rename = "Y")]
    pub y: JMat,
    pub meta: MetaJson,
}

impl PencilJson {
    pub fn from_pencil(l: &Pencil<f64>) -> Self {
        let meta = &l.meta;
        Self {
            x: mat_to_json(&l.x),
            y: mat_to_json(&l.y),
            meta: MetaJson {
                n: meta.n,
                k: meta.k,
                m: meta.m,
                family: meta.family.name().into(),
                ansatz_v: meta.ansatz.as_ref().map(vec_to_json),
                basis: BasisJson::from_basis(&meta.basis),
                transform: meta.transform.as_ref().map(|t| TransformJson {
                    left: mat_to_json(&t.left),
                    right: mat_to_json(&t.right),
                    structured: t.structured,
                }),
            },
        }
    }

    pub fn to_pencil(&self) -> Result<Pencil<f64>> {
        let x = mat_from_json(&self.x)?;
        let y = mat_from_json(&self.y)?;
        let mj = &self.meta;
        let size = mj.n + mj.k * mj.m;
        if x.shape() != (size, size) || y.shape() != (size, size) {
            return Err(Error::ShapeMismatch(format!("X and Y must be {size}x{size} (n + k m)")));
        }
        let transform = match &mj.transform {
            None => None,
            Some(t) => Some(TransformTrace {
                left: mat_from_json(&t.left)?,
                right: mat_from_json(&t.right)?,
                structured: t.structured,
            }),
        };
        let meta = PencilMeta {
            n: mj.n,
            k: mj.k,
            m: mj.m,
            family: Family::parse(&mj.family)?,
            ansatz: mj.ansatz_v.as_ref().map(vec_from_json),
            basis: mj.basis.to_basis(mj.k)?,
            transform,
        };
        Ok(Pencil { x, y, meta })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovJson {
    pub markov: Vec<JMat>,
    pub n: usize,
}

impl MarkovJson {
    pub fn to_sequence(&self) -> Result<MarkovSequence<f64>> {
        let markov = self.markov.iter().map(mat_from_json).collect::<Result<Vec<_>>>()?;
        Ok(MarkovSequence { markov, n: self.n })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleResidueJson {
    pub poles: JVec,
    pub residues: Vec<JMat>,
}

impl PoleResidueJson {
    pub fn to_pole_residue(&self) -> Result<PoleResidue<f64>> {
        Ok(PoleResidue {
            poles: from_cxs(&self.poles),
            residues: self.residues.iter().map(mat_from_json).collect::<Result<_>>()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenJson {
    pub lambda: JCx,
    pub multiplicity: usize,
    pub pole: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    /// `null` for eigenvectors at infinity.
    pub lambda: Option<JCx>,
    pub side: crate::solve::Side,
    pub vector: JVec,
    pub residual: f64,
}

/// Output of a solve: eigenvalues (pole-flagged ones included and marked),
/// recovered eigenvectors with their relative residuals, and the infinite count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveJson {
    pub family: String,
    pub finite: Vec<EigenJson>,
    pub infinite_count: usize,
    pub pairs: Vec<PairJson>,
    pub pole_candidates: JVec,
}

impl SolveJson {
    pub fn from_report(g: &RationalMatrix<f64>, rep: &SolveReport<f64>) -> Result<Self> {
        let finite = rep
            .solution
            .finite
            .iter()
            .map(|e| EigenJson { lambda: cx_to_json(e.lambda), multiplicity: e.multiplicity, pole: e.pole })
            .collect();
        let pairs = rep
            .pairs
            .iter()
            .map(|p| {
                Ok(PairJson {
                    lambda: (!p.at_infinity).then(|| cx_to_json(p.lambda)),
                    side: p.side,
                    vector: vec_to_json(&p.vector),
                    residual: pair_residual(g, p)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            family: rep.pencil.meta.family.name().into(),
            finite,
            infinite_count: rep.solution.infinite.count,
            pairs,
            pole_candidates: cxs(&rep.pole_candidates),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linearize::{build_pencil, BuildOptions};

    #[test]
    fn rational_round_trip_keeps_values() {
        let text = r#"{
            "basis": {"kind": "chebyshev1"},
            "poly_coeffs": [[[[1,0]]], [[[0,0]]], [[[2,0]]]],
            "sp": {"form": "pole_residue", "poles": [[1,0]], "residues": [[[[3,0]]]]},
            "structure": "symmetric"
        }"#;
        let j: RationalJson = serde_json::from_str(text).unwrap();
        let g = j.to_rational(1e-10).unwrap();
        assert_eq!((g.k(), g.m(), g.n()), (2, 1, 1));
        let z = C::new(0.3, 0.2);
        let back = RationalJson::from_rational(&g).to_rational(1e-10).unwrap();
        let expect = 1.0 + 2.0 * (2.0 * z * z - 1.0) + 3.0 / (z - 1.0);
        assert!((g.eval(z).unwrap()[(0, 0)] - expect).norm() < 1e-12);
        assert!((back.eval(z).unwrap()[(0, 0)] - expect).norm() < 1e-12);
    }

    #[test]
    fn pencil_round_trip_is_exact() {
        let text = r#"{"basis": {"kind": "monomial"}, "poly_coeffs": [[[[1,0]]], [[[-1,0]]], [[[0,0]]], [[[1,0]]]]}"#;
        let g = serde_json::from_str::<RationalJson>(text).unwrap().to_rational(1e-10).unwrap();
        let l = build_pencil(&g, Family::DM, &BuildOptions::default()).unwrap();
        let s = serde_json::to_string(&PencilJson::from_pencil(&l)).unwrap();
        let back = serde_json::from_str::<PencilJson>(&s).unwrap().to_pencil().unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn ragged_matrix_is_rejected() {
        let m: JMat = vec![vec![[1.0, 0.0]], vec![]];
        assert!(matches!(mat_from_json(&m), Err(Error::ShapeMismatch(_))));
    }
}

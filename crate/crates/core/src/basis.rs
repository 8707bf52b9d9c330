//! Polynomial bases: three-term recurrences and degree-graded bases.
//!
//! A three-term basis satisfies
//! `α_j φ_{j+1} = (λ - β_j) φ_j - γ_j φ_{j-1}` with `φ_{-1} = 0`, `φ_0 = 1`.
//! A degree-graded basis satisfies
//! `ψ_j = (λ - α_j) ψ_{j-1} + Σ_{i ≤ j-2} β_j^i ψ_i` with `ψ_0 = 1`.
//!
//! Vectors of basis values are always in descending degree order,
//! `[φ_{k-1}, ..., φ_1, φ_0]`; block indices in the recovery maps rely on it.

use crate::error::{Error, Result};
use crate::linalg::zeros;
use crate::scalar::{abs, cone, creal, czero, CMat, CVec, Real, C};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Monomial,
    Chebyshev1,
    Chebyshev2,
    Custom,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Monomial => "monomial",
            BasisKind::Chebyshev1 => "chebyshev1",
            BasisKind::Chebyshev2 => "chebyshev2",
            BasisKind::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "monomial" => Ok(BasisKind::Monomial),
            "chebyshev1" => Ok(BasisKind::Chebyshev1),
            "chebyshev2" => Ok(BasisKind::Chebyshev2),
            "custom" => Ok(BasisKind::Custom),
            other => Err(Error::InvalidBasis(format!("unknown basis kind '{other}'"))),
        }
    }
}

/// Three-term recurrence coefficients `α_j, β_j, γ_j` for `j = 0..len`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeTermBasis<T: Real> {
    pub kind: BasisKind,
    pub alpha: Vec<C<T>>,
    pub beta: Vec<C<T>>,
    /// `gamma[0]` is stored for uniformity but never read.
    pub gamma: Vec<C<T>>,
}

impl<T: Real> ThreeTermBasis<T> {
    pub fn new(kind: BasisKind, alpha: Vec<C<T>>, beta: Vec<C<T>>, gamma: Vec<C<T>>) -> Result<Self> {
        if alpha.len() != beta.len() || alpha.len() != gamma.len() {
            return Err(Error::InvalidBasis("alpha, beta and gamma must have equal length".into()));
        }
        if let Some(j) = alpha.iter().position(|a| abs(*a) == T::zero()) {
            return Err(Error::InvalidBasis(format!("alpha_{j} is zero")));
        }
        Ok(Self { kind, alpha, beta, gamma })
    }

    pub fn standard(kind: BasisKind, k: usize) -> Result<Self> {
        let half = creal(T::one() / (T::one() + T::one()));
        let (alpha, gamma): (Vec<C<T>>, Vec<C<T>>) = match kind {
            BasisKind::Monomial => (vec![cone(); k], vec![czero(); k]),
            BasisKind::Chebyshev1 => (
                (0..k).map(|j| if j == 0 { cone() } else { half }).collect(),
                (0..k).map(|j| if j == 0 { czero() } else { half }).collect(),
            ),
            BasisKind::Chebyshev2 => (vec![half; k], (0..k).map(|j| if j == 0 { czero() } else { half }).collect()),
            BasisKind::Custom => return Err(Error::InvalidBasis("custom bases need explicit coefficients".into())),
        };
        Ok(Self { kind, alpha, beta: vec![czero(); k], gamma })
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.alpha.iter().chain(&self.beta).chain(&self.gamma).all(|z| z.im == T::zero())
    }

    fn need(&self, len: usize) -> Result<()> {
        if self.len() < len {
            return Err(Error::InvalidBasis(format!("basis has {} recurrence coefficients, {len} needed", self.len())));
        }
        Ok(())
    }

    /// `[φ_0(λ), ..., φ_upto(λ)]` in ascending order.
    pub fn values_ascending(&self, upto: usize, lambda: C<T>) -> Result<Vec<C<T>>> {
        self.need(upto)?;
        let mut v = Vec::with_capacity(upto + 1);
        v.push(cone());
        for j in 0..upto {
            let prev = if j == 0 { czero() } else { v[j - 1] };
            let next = ((lambda - self.beta[j]) * v[j] - self.gamma[j] * prev) / self.alpha[j];
            v.push(next);
        }
        Ok(v)
    }

    /// `Φ_k(λ) = [φ_{k-1}, ..., φ_0]`.
    pub fn eval_phi(&self, k: usize, lambda: C<T>) -> Result<CVec<T>> {
        if k == 0 {
            return Err(Error::InvalidBasis("Φ_k needs k ≥ 1".into()));
        }
        let asc = self.values_ascending(k - 1, lambda)?;
        Ok(CVec::from_iterator(k, asc.into_iter().rev()))
    }

    /// `rev Φ_k(0) = (α_0 ⋯ α_{k-2})^{-1} e_1`.
    pub fn rev_phi_at_zero(&self, k: usize) -> Result<CVec<T>> {
        if k < 2 {
            return Err(Error::DegreeTooLow(k));
        }
        self.need(k - 1)?;
        let mut v = CVec::from_element(k, czero());
        v[0] = cone::<T>() / self.alpha[..k - 1].iter().fold(cone::<T>(), |p, a| p * a);
        Ok(v)
    }

    /// Leading monomial coefficient of `φ_j`, i.e. `(α_0 ⋯ α_{j-1})^{-1}`.
    pub fn leading_coefficient(&self, j: usize) -> Result<C<T>> {
        self.need(j)?;
        Ok(cone::<T>() / self.alpha[..j].iter().fold(cone::<T>(), |p, a| p * a))
    }

    /// The `(k-1) x k` pencil `M_Φ(λ) = λX + Y` with `M_Φ(λ) Φ_k(λ) = 0`.
    pub fn m_phi(&self, k: usize) -> Result<(CMat<T>, CMat<T>)> {
        if k < 2 {
            return Err(Error::DegreeTooLow(k));
        }
        self.need(k - 1)?;
        let mut x = zeros(k - 1, k);
        let mut y = zeros(k - 1, k);
        for i in 0..k - 1 {
            let j = k - 2 - i;
            x[(i, i + 1)] = cone();
            y[(i, i)] = -self.alpha[j];
            y[(i, i + 1)] = -self.beta[j];
            if i + 2 < k {
                y[(i, i + 2)] = -self.gamma[j];
            }
        }
        Ok((x, y))
    }

    /// Row `j` holds the monomial coefficients of `φ_j`, for `j = 0..=k`.
    pub fn monomial_table(&self, k: usize) -> Result<Vec<Vec<C<T>>>> {
        self.need(k)?;
        let mut rows: Vec<Vec<C<T>>> = vec![vec![czero(); k + 1]; k + 1];
        rows[0][0] = cone();
        for j in 0..k {
            let mut next = vec![czero(); k + 1];
            for i in 0..k {
                next[i + 1] += rows[j][i];
            }
            for i in 0..=k {
                next[i] -= self.beta[j] * rows[j][i];
                if j > 0 {
                    next[i] -= self.gamma[j] * rows[j - 1][i];
                }
                next[i] /= self.alpha[j];
            }
            rows[j + 1] = next;
        }
        Ok(rows)
    }
}

/// Degree-graded basis with `alpha[j-1] = α_j` for `j = 1..=len` and
/// `beta[j-2][i] = β_j^i` for `j ≥ 2`, `i ≤ j-2`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeGradedBasis<T: Real> {
    pub alpha: Vec<C<T>>,
    pub beta: Vec<Vec<C<T>>>,
}

impl<T: Real> DegreeGradedBasis<T> {
    pub fn new(alpha: Vec<C<T>>, beta: Vec<Vec<C<T>>>) -> Result<Self> {
        let k = alpha.len();
        if beta.len() + 1 < k {
            return Err(Error::InvalidBasis(format!("beta table needs {} rows", k - 1)));
        }
        for (r, row) in beta.iter().enumerate() {
            if row.len() < r + 1 {
                return Err(Error::InvalidBasis(format!("beta row for j={} needs {} entries", r + 2, r + 1)));
            }
        }
        Ok(Self { alpha, beta })
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.alpha.iter().chain(self.beta.iter().flatten()).all(|z| z.im == T::zero())
    }

    fn need(&self, len: usize) -> Result<()> {
        if self.len() < len {
            return Err(Error::InvalidBasis(format!("degree-graded basis has length {}, {len} needed", self.len())));
        }
        Ok(())
    }

    /// `β_j^i`, zero outside the table.
    pub fn b(&self, j: usize, i: usize) -> C<T> {
        if j < 2 || i + 2 > j {
            return czero();
        }
        self.beta.get(j - 2).and_then(|row| row.get(i)).copied().unwrap_or(czero())
    }

    pub fn values_ascending(&self, upto: usize, lambda: C<T>) -> Result<Vec<C<T>>> {
        self.need(upto)?;
        let mut v = vec![cone()];
        for j in 1..=upto {
            let mut next = (lambda - self.alpha[j - 1]) * v[j - 1];
            for i in 0..j.saturating_sub(1) {
                next += self.b(j, i) * v[i];
            }
            v.push(next);
        }
        Ok(v)
    }

    /// `Ψ_k(λ) = [ψ_{k-1}, ..., ψ_0]`.
    pub fn eval_psi(&self, k: usize, lambda: C<T>) -> Result<CVec<T>> {
        if k == 0 {
            return Err(Error::InvalidBasis("Ψ_k needs k ≥ 1".into()));
        }
        let asc = self.values_ascending(k - 1, lambda)?;
        Ok(CVec::from_iterator(k, asc.into_iter().rev()))
    }

    /// The `(k-1) x k` pencil `M_Ψ(λ)` with `M_Ψ(λ) Ψ_k(λ) = 0`.
    pub fn m_psi(&self, k: usize) -> Result<(CMat<T>, CMat<T>)> {
        if k < 2 {
            return Err(Error::DegreeTooLow(k));
        }
        self.need(k - 1)?;
        let mut x = zeros(k - 1, k);
        let mut y = zeros(k - 1, k);
        for r in 0..k - 1 {
            let j = k - 1 - r;
            y[(r, r)] = -cone::<T>();
            x[(r, r + 1)] = cone();
            y[(r, r + 1)] = -self.alpha[j - 1];
            for c in r + 2..k {
                y[(r, c)] = self.b(j, k - 1 - c);
            }
        }
        Ok((x, y))
    }

    pub fn monomial_table(&self, k: usize) -> Result<Vec<Vec<C<T>>>> {
        self.need(k)?;
        let mut rows: Vec<Vec<C<T>>> = vec![vec![czero(); k + 1]; k + 1];
        rows[0][0] = cone();
        for j in 1..=k {
            let mut next = vec![czero(); k + 1];
            for i in 0..k {
                next[i + 1] += rows[j - 1][i];
            }
            for i in 0..=k {
                next[i] -= self.alpha[j - 1] * rows[j - 1][i];
                for l in 0..j.saturating_sub(1) {
                    next[i] += self.b(j, l) * rows[l][i];
                }
            }
            rows[j] = next;
        }
        Ok(rows)
    }
}

/// Either kind of basis; the polynomial part of a rational matrix refers to one.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyBasis<T: Real> {
    ThreeTerm(ThreeTermBasis<T>),
    DegreeGraded(DegreeGradedBasis<T>),
}

impl<T: Real> From<ThreeTermBasis<T>> for PolyBasis<T> {
    fn from(b: ThreeTermBasis<T>) -> Self {
        PolyBasis::ThreeTerm(b)
    }
}

impl<T: Real> From<DegreeGradedBasis<T>> for PolyBasis<T> {
    fn from(b: DegreeGradedBasis<T>) -> Self {
        PolyBasis::DegreeGraded(b)
    }
}

impl<T: Real> PolyBasis<T> {
    pub fn monomial(k: usize) -> Self {
        PolyBasis::ThreeTerm(ThreeTermBasis::standard(BasisKind::Monomial, k).expect("standard"))
    }

    pub fn len(&self) -> usize {
        match self {
            PolyBasis::ThreeTerm(b) => b.len(),
            PolyBasis::DegreeGraded(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_real(&self) -> bool {
        match self {
            PolyBasis::ThreeTerm(b) => b.is_real(),
            PolyBasis::DegreeGraded(b) => b.is_real(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self, PolyBasis::ThreeTerm(b) if b.kind == BasisKind::Monomial)
    }

    pub fn three_term(&self) -> Option<&ThreeTermBasis<T>> {
        match self {
            PolyBasis::ThreeTerm(b) => Some(b),
            PolyBasis::DegreeGraded(_) => None,
        }
    }

    pub fn values_ascending(&self, upto: usize, lambda: C<T>) -> Result<Vec<C<T>>> {
        match self {
            PolyBasis::ThreeTerm(b) => b.values_ascending(upto, lambda),
            PolyBasis::DegreeGraded(b) => b.values_ascending(upto, lambda),
        }
    }

    /// `Φ_k(λ)` or `Ψ_k(λ)`, descending.
    pub fn eval_vec(&self, k: usize, lambda: C<T>) -> Result<CVec<T>> {
        match self {
            PolyBasis::ThreeTerm(b) => b.eval_phi(k, lambda),
            PolyBasis::DegreeGraded(b) => b.eval_psi(k, lambda),
        }
    }

    /// Value of the basis vector reversal at zero; `e_1` for degree-graded bases.
    pub fn rev_vec_at_zero(&self, k: usize) -> Result<CVec<T>> {
        match self {
            PolyBasis::ThreeTerm(b) => b.rev_phi_at_zero(k),
            PolyBasis::DegreeGraded(_) => {
                let mut v = CVec::from_element(k, czero());
                v[0] = cone();
                Ok(v)
            }
        }
    }

    /// Relation pencil `M_Φ` or `M_Ψ`.
    pub fn relation_pencil(&self, k: usize) -> Result<(CMat<T>, CMat<T>)> {
        match self {
            PolyBasis::ThreeTerm(b) => b.m_phi(k),
            PolyBasis::DegreeGraded(b) => b.m_psi(k),
        }
    }

    pub fn monomial_table(&self, k: usize) -> Result<Vec<Vec<C<T>>>> {
        match self {
            PolyBasis::ThreeTerm(b) => b.monomial_table(k),
            PolyBasis::DegreeGraded(b) => b.monomial_table(k),
        }
    }

    pub fn leading_coefficient(&self, j: usize) -> Result<C<T>> {
        match self {
            PolyBasis::ThreeTerm(b) => b.leading_coefficient(j),
            PolyBasis::DegreeGraded(_) => Ok(cone()),
        }
    }
}

pub fn standard_basis<T: Real>(kind: BasisKind, k: usize) -> Result<ThreeTermBasis<T>> {
    if k < 1 {
        return Err(Error::InvalidBasis("standard bases need k ≥ 1".into()));
    }
    ThreeTermBasis::standard(kind, k)
}

pub fn eval_phi<T: Real>(basis: &ThreeTermBasis<T>, k: usize, lambda: C<T>) -> Result<CVec<T>> {
    basis.eval_phi(k, lambda)
}

pub fn rev_phi_at_zero<T: Real>(basis: &ThreeTermBasis<T>, k: usize) -> Result<CVec<T>> {
    basis.rev_phi_at_zero(k)
}

pub fn m_phi_pencil<T: Real>(basis: &ThreeTermBasis<T>, k: usize) -> Result<(CMat<T>, CMat<T>)> {
    basis.m_phi(k)
}

pub fn degree_graded_pencil<T: Real>(basis: &DegreeGradedBasis<T>, k: usize) -> Result<(CMat<T>, CMat<T>)> {
    basis.m_psi(k)
}

/// Re-expresses `Σ D_j φ_j` as `Σ M_i λ^i`.
pub fn to_monomial<T: Real>(basis: &PolyBasis<T>, coeffs: &[CMat<T>]) -> Result<Vec<CMat<T>>> {
    if coeffs.is_empty() {
        return Ok(vec![]);
    }
    let k = coeffs.len() - 1;
    if k > 25 {
        log::warn!("monomial conversion of degree {k} may be badly conditioned");
    }
    let table = basis.monomial_table(k)?;
    let (r, c) = coeffs[0].shape();
    let mut out = vec![zeros(r, c); k + 1];
    for (j, d) in coeffs.iter().enumerate() {
        for (i, o) in out.iter_mut().enumerate() {
            let t = table[j][i];
            if t != czero() {
                *o += d * t;
            }
        }
    }
    Ok(out)
}

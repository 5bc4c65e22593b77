//! Truncated polynomials over GF(2) and the Stiefel–Whitney identities for
//! `ρ = (u₁ − 1)⋯(u_n − 1)`.
//!
//! With `xᵢ = w₁(uᵢ)`, the total class of `ρ` is
//! `ω = (∏_{|ε| even}(1 + εx) / ∏_{|ε| odd}(1 + εx))^{(−1)^n}`
//! where `ε` runs over `{0,1}^n` and `εx = Σ εᵢxᵢ`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub const MAX_VARIABLES: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MilnorError {
    #[error("variable count must lie in 1..={max}, got {0}", max = MAX_VARIABLES)]
    VariableCount(usize),
    #[error("truncation degree {found} is below the required {required}")]
    Truncation { required: usize, found: usize },
    #[error("substitution refers to variable {0} outside the ring")]
    Substitution(usize),
    #[error("series has zero constant term and cannot be inverted")]
    NonUnit,
}

/// A polynomial over GF(2) in `nvars` variables, truncated above total degree `max_degree`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Poly {
    nvars: usize,
    max_degree: usize,
    terms: BTreeSet<Vec<u32>>,
}

fn degree_of(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

impl F2Poly {
    pub fn zero(nvars: usize, max_degree: usize) -> Self {
        F2Poly { nvars, max_degree, terms: BTreeSet::new() }
    }

    pub fn one(nvars: usize, max_degree: usize) -> Self {
        let mut p = Self::zero(nvars, max_degree);
        p.terms.insert(vec![0; nvars]);
        p
    }

    pub fn var(nvars: usize, max_degree: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_monomials(nvars, max_degree, [e])
    }

    /// Each monomial toggles its coefficient, so repeats cancel.
    pub fn from_monomials(nvars: usize, max_degree: usize, monomials: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut p = Self::zero(nvars, max_degree);
        for e in monomials {
            assert_eq!(e.len(), nvars, "exponent length");
            p.toggle(e);
        }
        p
    }

    /// `Σ xᵢ` over the given variables.
    pub fn linear(nvars: usize, max_degree: usize, vars: &[usize]) -> Self {
        let monomials = vars.iter().map(|&i| {
            let mut e = vec![0; nvars];
            e[i] = 1;
            e
        });
        Self::from_monomials(nvars, max_degree, monomials)
    }

    fn toggle(&mut self, e: Vec<u32>) {
        if degree_of(&e) > self.max_degree {
            return;
        }
        if !self.terms.remove(&e) {
            self.terms.insert(e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> &BTreeSet<Vec<u32>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for e in &other.terms {
            out.toggle(e.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.max_degree.min(other.max_degree));
        for a in &self.terms {
            let da = degree_of(a);
            for b in &other.terms {
                if da + degree_of(b) > out.max_degree {
                    continue;
                }
                out.toggle(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        out
    }

    /// The homogeneous part of degree `d`.
    pub fn homogeneous(&self, d: usize) -> Self {
        let terms = self.terms.iter().filter(|e| degree_of(e) == d).cloned().collect();
        F2Poly { nvars: self.nvars, max_degree: self.max_degree, terms }
    }

    /// Smallest positive degree carrying a nonzero term.
    pub fn min_positive_degree(&self) -> Option<usize> {
        self.terms.iter().map(|e| degree_of(e)).filter(|&d| d > 0).min()
    }

    /// Inverse of a series with constant term 1: `(1 + u)⁻¹ = Σ u^k`.
    pub fn inverse(&self) -> Result<Self, MilnorError> {
        let one = Self::one(self.nvars, self.max_degree);
        if !self.terms.contains(&vec![0; self.nvars]) {
            return Err(MilnorError::NonUnit);
        }
        let u = self.add(&one);
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..self.max_degree {
            power = power.mul(&u);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc)
    }

    /// Same polynomial in a ring with a different truncation.
    pub fn with_max_degree(&self, max_degree: usize) -> Self {
        Self::from_monomials(self.nvars, max_degree, self.terms.iter().cloned())
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        // highest degree first, then lexicographically larger exponents
        let mut terms: Vec<&Vec<u32>> = self.terms.iter().collect();
        terms.sort_by(|a, b| degree_of(b).cmp(&degree_of(a)).then(b.cmp(a)));
        for e in terms {
            let mut s = String::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => s.push_str(&format!("x{}", i + 1)),
                    _ => s.push_str(&format!("x{}^{}", i + 1, k)),
                }
            }
            parts.push(if s.is_empty() { "1".to_string() } else { s });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly[{}; ≤{}]({})", self.nvars, self.max_degree, self)
    }
}

fn check_n(n: usize) -> Result<(), MilnorError> {
    if n == 0 || n > MAX_VARIABLES {
        Err(MilnorError::VariableCount(n))
    } else {
        Ok(())
    }
}

/// `ω` with `x_var` replaced by `Σ_{i ∈ replacement} xᵢ` when a substitution is given.
fn omega_forms(n: usize, d: usize, subst: Option<(usize, &[usize])>) -> Result<F2Poly, MilnorError> {
    check_n(n)?;
    let need = 1usize << (n - 1);
    if d < need {
        return Err(MilnorError::Truncation { required: need, found: d });
    }
    if let Some((v, rep)) = subst {
        if v >= n || rep.iter().any(|&i| i >= n) {
            return Err(MilnorError::Substitution(v.max(rep.iter().copied().max().unwrap_or(0))));
        }
    }
    let mut even = F2Poly::one(n, d);
    let mut odd = F2Poly::one(n, d);
    for mask in 1u32..(1 << n) {
        let mut form = vec![false; n];
        for i in 0..n {
            if mask >> i & 1 == 1 {
                match subst {
                    Some((v, rep)) if v == i => rep.iter().for_each(|&j| form[j] ^= true),
                    _ => form[i] ^= true,
                }
            }
        }
        let vars: Vec<usize> = (0..n).filter(|&i| form[i]).collect();
        let factor = F2Poly::one(n, d).add(&F2Poly::linear(n, d, &vars));
        if mask.count_ones() % 2 == 0 {
            even = even.mul(&factor);
        } else {
            odd = odd.mul(&factor);
        }
    }
    let ratio = even.mul(&odd.inverse()?);
    if n % 2 == 1 {
        ratio.inverse()
    } else {
        Ok(ratio)
    }
}

/// The total Stiefel–Whitney class of `ρ`, truncated above degree `d ≥ 2^{n−1}`.
pub fn omega(n: usize, d: usize) -> Result<F2Poly, MilnorError> {
    omega_forms(n, d, None)
}

/// `ω` after substituting `x_var ← Σ_{i ∈ replacement} xᵢ` in every factor.
pub fn omega_substituted(n: usize, d: usize, var: usize, replacement: &[usize]) -> Result<F2Poly, MilnorError> {
    omega_forms(n, d, Some((var, replacement)))
}

/// First positive degree in which `ω` is nonzero, searched up to `2^{n−1}`.
pub fn vanishing_range(n: usize) -> Result<Option<usize>, MilnorError> {
    check_n(n)?;
    Ok(omega(n, 1 << (n - 1))?.min_positive_degree())
}

/// `∏_{|ε| odd} εx`.
pub fn top_class_product(n: usize) -> Result<F2Poly, MilnorError> {
    check_n(n)?;
    let d = 1usize << (n - 1);
    let mut acc = F2Poly::one(n, d);
    for mask in 1u32..(1 << n) {
        if mask.count_ones() % 2 == 1 {
            let vars: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            acc = acc.mul(&F2Poly::linear(n, d, &vars));
        }
    }
    Ok(acc)
}

/// `Σ x₁^{2^{r₁}}⋯x_n^{2^{r_n}}` over `2^{r₁} + ⋯ + 2^{r_n} = 2^{n−1}`.
pub fn top_class_sum(n: usize) -> Result<F2Poly, MilnorError> {
    check_n(n)?;
    let d = 1usize << (n - 1);
    let mut monomials = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(n: usize, left: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == n {
            if left == 0 {
                out.push(current.clone());
            }
            return;
        }
        let mut p = 1usize;
        while p <= left {
            current.push(p as u32);
            rec(n, left - p, current, out);
            current.pop();
            p <<= 1;
        }
    }
    rec(n, d, &mut current, &mut monomials);
    Ok(F2Poly::from_monomials(n, d, monomials))
}

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

/// Runs the vanishing, top-class and substitution checks for `n` variables.
pub fn check_identities(n: usize) -> Result<Vec<IdentityCheck>, MilnorError> {
    let d = 1usize << (n - 1);
    let w = omega(n, d)?;
    let mut out = Vec::new();
    out.push(IdentityCheck { name: format!("vanishing<{}", d), passed: w.min_positive_degree() == Some(d) });
    let top = w.homogeneous(d);
    let prod = top_class_product(n)?;
    let sum = top_class_sum(n)?;
    out.push(IdentityCheck { name: "product=sum".into(), passed: prod == sum });
    out.push(IdentityCheck { name: "product=omega".into(), passed: prod == top });
    if n >= 3 {
        let sub = omega_substituted(n, d, n - 1, &[0, 1])?;
        out.push(IdentityCheck { name: format!("x{}<-x1+x2 cancels", n), passed: sub.is_one() });
    }
    Ok(out)
}

//! Presented augmented pre-λ-rings.
//!
//! A [`RingModel`] is a finitely presented abelian group with a structure
//! constant table, a unit, an augmentation `d: A → ℤ` and the λ-series of
//! each basis element. λ is extended to arbitrary elements through the
//! group homomorphism `λ_t: A → (1 + tA⟦t⟧)^×`; γ and ψ are derived from it.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::abelian::{GroupElement, GroupError, GroupPresentation};
use crate::series::{binomial_signed, CoeffRing, SeriesError, TruncSeries, DEFAULT_TRUNCATION};
use crate::symfunc::{compose_universal, newton_psi, product_universal, SymError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("basis index {0} out of range")]
    BasisIndex(usize),
    #[error("augmentation has {found} entries, expected {expected}")]
    Augmentation { expected: usize, found: usize },
    #[error("λ-series given for {found} basis elements, expected {expected}")]
    LambdaCount { expected: usize, found: usize },
    #[error("requested truncation {requested} exceeds the model's declared degree {declared}")]
    TruncationExceeded { requested: usize, declared: usize },
    #[error("elements belong to different models")]
    ModelMismatch,
    #[error("degree must be at least {0}")]
    Degree(usize),
    #[error("model declares no hyperbolic generators")]
    MissingHyperbolic,
    #[error("{0}")]
    Invalid(String),
}

pub type Series = TruncSeries<GroupElement>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingModel {
    name: String,
    group: GroupPresentation,
    unit: GroupElement,
    mul_table: Vec<Vec<GroupElement>>,
    augmentation: Vec<BigInt>,
    lambda_on_basis: Vec<Vec<GroupElement>>,
    hyperbolic: Option<Vec<GroupElement>>,
    truncation: usize,
}

/// Sparse structure constant `bᵢ·bⱼ` with `i ≤ j`.
#[derive(Debug, Clone)]
pub struct MulEntry {
    pub i: usize,
    pub j: usize,
    pub product: GroupElement,
}

impl RingModel {
    /// Assembles a model and checks shapes. The algebraic identities are
    /// checked separately by [`validate_model`].
    pub fn new(
        name: impl Into<String>,
        group: GroupPresentation,
        unit: GroupElement,
        mul: Vec<MulEntry>,
        augmentation: Vec<BigInt>,
        lambda_on_basis: Vec<Vec<GroupElement>>,
        hyperbolic: Option<Vec<GroupElement>>,
        truncation: usize,
    ) -> Result<Self, ModelError> {
        let n = group.rank();
        group.check(&unit)?;
        let unit = group.element(unit.coeffs().to_vec())?;
        if augmentation.len() != n {
            return Err(ModelError::Augmentation { expected: n, found: augmentation.len() });
        }
        if lambda_on_basis.len() != n {
            return Err(ModelError::LambdaCount { expected: n, found: lambda_on_basis.len() });
        }
        let mut table = vec![vec![group.zero(); n]; n];
        for e in mul {
            if e.i >= n || e.j >= n {
                return Err(ModelError::BasisIndex(e.i.max(e.j)));
            }
            let p = group.element(e.product.coeffs().to_vec())?;
            table[e.i][e.j] = p.clone();
            table[e.j][e.i] = p;
        }
        let mut lambdas = Vec::with_capacity(n);
        for series in lambda_on_basis {
            let mut reduced = Vec::with_capacity(series.len());
            for x in series {
                reduced.push(group.element(x.coeffs().to_vec())?);
            }
            while reduced.last().is_some_and(|x: &GroupElement| x.is_zero()) {
                reduced.pop();
            }
            lambdas.push(reduced);
        }
        let hyperbolic = match hyperbolic {
            None => None,
            Some(hs) => Some(
                hs.into_iter().map(|h| group.element(h.coeffs().to_vec())).collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(RingModel {
            name: name.into(),
            group,
            unit,
            mul_table: table,
            augmentation,
            lambda_on_basis: lambdas,
            hyperbolic,
            truncation,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &GroupPresentation {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn unit(&self) -> &GroupElement {
        &self.unit
    }

    pub fn augmentation(&self) -> &[BigInt] {
        &self.augmentation
    }

    pub fn hyperbolic(&self) -> Option<&[GroupElement]> {
        self.hyperbolic.as_deref()
    }

    /// Degree up to which λ-series are meaningful.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn basis(&self, i: usize) -> GroupElement {
        self.group.basis_element(i)
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.group.names().iter().position(|n| n == name)
    }

    pub fn named(&self, name: &str) -> Option<GroupElement> {
        self.basis_index(name).map(|i| self.basis(i))
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &GroupElement {
        &self.mul_table[i][j]
    }

    /// Stored λ¹..λ^{D_b} of a basis element (trailing zeros dropped).
    pub fn lambda_of_basis(&self, i: usize) -> &[GroupElement] {
        &self.lambda_on_basis[i]
    }

    pub fn element(&self, coeffs: &[i64]) -> Result<GroupElement, ModelError> {
        Ok(self.group.element_i64(coeffs)?)
    }

    /// Parses a small combination like `"a + 2*L - 1"` over basis names.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement, ModelError> {
        let mut acc = self.group.zero();
        let cleaned = text.replace('-', "+-");
        for raw in cleaned.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                continue;
            }
            let (neg, term) = match term.strip_prefix('-') {
                Some(t) => (true, t.trim()),
                None => (false, term),
            };
            let (coef, name) = match term.split_once('*') {
                Some((c, n)) => (c.trim().parse::<BigInt>().map_err(|e| ModelError::Invalid(e.to_string()))?, n.trim()),
                None => match term.parse::<BigInt>() {
                    Ok(c) => (c, "1"),
                    Err(_) => (BigInt::one(), term),
                },
            };
            let coef = if neg { -coef } else { coef };
            let x = if name == "1" {
                self.unit.clone()
            } else {
                self.named(name).ok_or_else(|| ModelError::Invalid(format!("unknown basis name `{}`", name)))?
            };
            acc = self.group.add(&acc, &self.group.scale(&coef, &x));
        }
        Ok(acc)
    }

    pub fn format(&self, x: &GroupElement) -> String {
        self.group.format_element(x)
    }

    pub fn from_int(&self, k: i64) -> GroupElement {
        self.group.scale(&BigInt::from(k), &self.unit)
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.group.add(x, y)
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.group.sub(x, y)
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let n = self.rank();
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); n];
        for (i, xi) in x.coeffs().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let k = xi * yj;
                for (a, c) in acc.iter_mut().zip(self.mul_table[i][j].coeffs()) {
                    if !c.is_zero() {
                        *a += &k * c;
                    }
                }
            }
        }
        self.group.reduce(acc)
    }

    pub fn power(&self, x: &GroupElement, k: u32) -> GroupElement {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.multiply(&acc, x);
        }
        acc
    }

    /// `d(x)`.
    pub fn augment(&self, x: &GroupElement) -> BigInt {
        x.coeffs().iter().zip(&self.augmentation).map(|(c, d)| c * d).sum()
    }

    fn check_truncation(&self, n: usize) -> Result<(), ModelError> {
        if n > self.truncation {
            Err(ModelError::TruncationExceeded { requested: n, declared: self.truncation })
        } else {
            Ok(())
        }
    }

    /// `λ_t(bᵢ)` padded with zeros to order `n`.
    pub fn basis_lambda_series(&self, i: usize, n: usize) -> Series {
        let mut coeffs = vec![self.unit.clone()];
        coeffs.extend(self.lambda_on_basis[i].iter().cloned());
        TruncSeries::from_coeffs(self, coeffs, n)
    }

    /// `λ_t(x) = ∏ λ_t(bᵢ)^{nᵢ}` for `x = Σ nᵢbᵢ`, truncated at `t^n`.
    pub fn lambda_total(&self, x: &GroupElement, n: usize) -> Result<Series, ModelError> {
        self.check_truncation(n)?;
        self.group.check(x)?;
        let mut acc = TruncSeries::one(self, n);
        for (i, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let factor = self.basis_lambda_series(i, n).pow(self, c)?;
            acc = acc.mul(self, &factor)?;
        }
        Ok(acc)
    }

    pub fn lambda_k(&self, x: &GroupElement, k: usize) -> Result<GroupElement, ModelError> {
        Ok(self.lambda_total(x, k)?.coeff(k).clone())
    }

    /// `γ_t(x) = λ_{t/(1−t)}(x)`.
    pub fn gamma_total(&self, x: &GroupElement, n: usize) -> Result<Series, ModelError> {
        Ok(self.lambda_total(x, n)?.gamma_from_lambda(self))
    }

    pub fn gamma_k(&self, x: &GroupElement, k: usize) -> Result<GroupElement, ModelError> {
        Ok(self.gamma_total(x, k)?.coeff(k).clone())
    }

    /// Adams operation through Newton's identity in the elementary basis.
    pub fn psi_k(&self, x: &GroupElement, k: usize) -> Result<GroupElement, ModelError> {
        if k == 0 {
            return Err(ModelError::Degree(1));
        }
        let lam = self.lambda_total(x, k)?;
        Ok(newton_psi(k).eval(self, &lam.coeffs()[1..]))
    }
}

impl CoeffRing for RingModel {
    type Elem = GroupElement;

    fn zero(&self) -> GroupElement {
        self.group.zero()
    }
    fn one(&self) -> GroupElement {
        self.unit.clone()
    }
    fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.group.add(a, b)
    }
    fn neg(&self, a: &GroupElement) -> GroupElement {
        self.group.neg(a)
    }
    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.multiply(a, b)
    }
    fn scale(&self, k: &BigInt, a: &GroupElement) -> GroupElement {
        self.group.scale(k, a)
    }
    fn is_zero(&self, a: &GroupElement) -> bool {
        a.is_zero()
    }
}

/// An element tied to its model.
#[derive(Debug, Clone)]
pub struct RingElement {
    pub model: Arc<RingModel>,
    pub value: GroupElement,
}

impl RingElement {
    pub fn new(model: Arc<RingModel>, value: GroupElement) -> Result<Self, ModelError> {
        model.group().check(&value)?;
        Ok(RingElement { model, value })
    }

    fn same_model(&self, other: &RingElement) -> Result<(), ModelError> {
        if Arc::ptr_eq(&self.model, &other.model) || *self.model == *other.model {
            Ok(())
        } else {
            Err(ModelError::ModelMismatch)
        }
    }

    pub fn multiply(&self, other: &RingElement) -> Result<RingElement, ModelError> {
        self.same_model(other)?;
        Ok(RingElement { model: self.model.clone(), value: self.model.multiply(&self.value, &other.value) })
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement, ModelError> {
        self.same_model(other)?;
        Ok(RingElement { model: self.model.clone(), value: self.model.add(&self.value, &other.value) })
    }

    pub fn lambda_total(&self, n: usize) -> Result<Series, ModelError> {
        self.model.lambda_total(&self.value, n)
    }

    pub fn gamma_k(&self, k: usize) -> Result<RingElement, ModelError> {
        Ok(RingElement { model: self.model.clone(), value: self.model.gamma_k(&self.value, k)? })
    }

    pub fn psi_k(&self, k: usize) -> Result<RingElement, ModelError> {
        Ok(RingElement { model: self.model.clone(), value: self.model.psi_k(&self.value, k)? })
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.model.format(&self.value))
    }
}

/// One named identity and whether it held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

/// Finite checks of the model invariants. Every failing identity is listed,
/// grouped by check name.
pub fn validate_model(m: &RingModel) -> Report {
    let mut report = Report::default();
    let n = m.rank();
    let g = m.group();
    let names = g.names();
    let basis: Vec<GroupElement> = (0..n).map(|i| m.basis(i)).collect();

    let mut fails = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        if m.multiply(&m.unit, b) != *b {
            fails.push(format!("1·{} ≠ {}", names[i], names[i]));
        }
    }
    report.push("unit", fails.is_empty(), fails.join("; "));

    let mut fails = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if m.mul_table[i][j] != m.mul_table[j][i] {
                fails.push(format!("{}·{} ≠ {}·{}", names[i], names[j], names[j], names[i]));
            }
        }
    }
    report.push("commutativity", fails.is_empty(), fails.join("; "));

    let mut fails = Vec::new();
    'assoc: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = m.multiply(&m.mul_table[i][j], &basis[k]);
                let right = m.multiply(&basis[i], &m.mul_table[j][k]);
                if left != right {
                    fails.push(format!("({}·{})·{} ≠ {}·({}·{})", names[i], names[j], names[k], names[i], names[j], names[k]));
                    if fails.len() > 4 {
                        break 'assoc;
                    }
                }
            }
        }
    }
    report.push("associativity", fails.is_empty(), fails.join("; "));

    // products with a torsion generator must be killed by its order
    let mut fails = Vec::new();
    for i in 0..n {
        let o = &g.orders()[i];
        if o.is_zero() {
            continue;
        }
        for j in 0..n {
            let raw: Vec<BigInt> = m.mul_table[i][j].coeffs().iter().map(|c| c * o).collect();
            if !g.reduce(raw).is_zero() {
                fails.push(format!("{}·({}·{}) ≠ 0", o, names[i], names[j]));
            }
        }
    }
    report.push("torsion compatibility", fails.is_empty(), fails.join("; "));

    let mut fails = Vec::new();
    if m.augment(&m.unit) != BigInt::one() {
        fails.push(format!("d(1) = {}", m.augment(&m.unit)));
    }
    for i in 0..n {
        if !g.orders()[i].is_zero() && !m.augmentation[i].is_zero() {
            fails.push(format!("torsion generator {} has d = {}", names[i], m.augmentation[i]));
        }
        for j in 0..n {
            let lhs = m.augment(&m.mul_table[i][j]);
            let rhs = &m.augmentation[i] * &m.augmentation[j];
            if lhs != rhs {
                fails.push(format!("d({}·{}) = {} ≠ {}", names[i], names[j], lhs, rhs));
            }
        }
    }
    report.push("augmentation homomorphism", fails.is_empty(), fails.join("; "));

    let mut fails = Vec::new();
    for i in 0..n {
        let first = m.lambda_on_basis[i].first().cloned().unwrap_or_else(|| g.zero());
        if first != basis[i] {
            fails.push(format!("λ¹({}) = {}", names[i], g.format_element(&first)));
        }
    }
    report.push("lambda1 identity", fails.is_empty(), fails.join("; "));

    let mut fails = Vec::new();
    for i in 0..n {
        for (k, x) in m.lambda_on_basis[i].iter().enumerate() {
            let lhs = m.augment(x);
            let rhs = binomial_signed(&m.augmentation[i], k + 1);
            if lhs != rhs {
                fails.push(format!("d(λ^{}({})) = {} ≠ C({}, {}) = {}", k + 1, names[i], lhs, m.augmentation[i], k + 1, rhs));
            }
        }
    }
    report.push("augmentation binomial compatibility", fails.is_empty(), fails.join("; "));

    // λ_t must be well defined on the torsion summands: λ_t(b)^o = 1
    let mut fails = Vec::new();
    let trunc = m.truncation;
    for i in 0..n {
        let o = &g.orders()[i];
        if o.is_zero() {
            continue;
        }
        let s = m.basis_lambda_series(i, trunc);
        match s.pow(m, o) {
            Ok(p) if p == TruncSeries::one(m, trunc) => {}
            Ok(p) => {
                let k = (1..=trunc).find(|&k| !p.coeff(k).is_zero()).unwrap_or(0);
                fails.push(format!("λ_t({})^{} has t^{} coefficient {}", names[i], o, k, g.format_element(p.coeff(k))));
            }
            Err(e) => fails.push(e.to_string()),
        }
    }
    report.push("torsion lambda compatibility", fails.is_empty(), fails.join("; "));

    // real λ-ring: line elements square to one
    let mut fails = Vec::new();
    for i in 0..n {
        if m.augmentation[i].is_one() && m.lambda_on_basis[i].len() == 1 {
            let sq = m.multiply(&basis[i], &basis[i]);
            if sq != m.unit {
                fails.push(format!("{}² = {}", names[i], g.format_element(&sq)));
            }
        }
    }
    report.push("line elements square to one", fails.is_empty(), fails.join("; "));

    report
}

pub const DEFAULT_PRODUCT_BOUND: usize = 3;
pub const DEFAULT_COMPOSE_PAIRS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 2)];

/// `λⁿ(xy) = Pₙ(λ•x, λ•y)` for `n ≤ product_bound`, and
/// `λᵐ(λⁿ(z)) = P_{m,n}(λ•z)` for `z ∈ {x, y}` and each listed `(m, n)`.
pub fn verify_special_pair_with(
    m: &RingModel,
    x: &GroupElement,
    y: &GroupElement,
    product_bound: usize,
    compose_pairs: &[(usize, usize)],
) -> Result<Report, ModelError> {
    let mut report = Report::default();
    let xs = m.format(x);
    let ys = m.format(y);
    let need = compose_pairs.iter().map(|(a, b)| a * b).max().unwrap_or(0).max(product_bound);
    let lx = m.lambda_total(x, need)?;
    let ly = m.lambda_total(y, need)?;
    let xy = m.multiply(x, y);
    let lxy = m.lambda_total(&xy, product_bound)?;
    for n in 1..=product_bound {
        let poly = product_universal(n)?;
        let mut vals: Vec<GroupElement> = lx.coeffs()[1..=n].to_vec();
        vals.extend_from_slice(&ly.coeffs()[1..=n]);
        let rhs = poly.eval(m, &vals);
        let lhs = lxy.coeff(n);
        report.push(
            format!("λ^{}(({})·({})) = P_{}", n, xs, ys, n),
            *lhs == rhs,
            if *lhs == rhs { String::new() } else { format!("lhs {} vs rhs {}", m.format(lhs), m.format(&rhs)) },
        );
    }
    let mut targets = vec![(x, &lx, &xs)];
    if x != y {
        targets.push((y, &ly, &ys));
    }
    for &(outer, inner) in compose_pairs {
        let poly = compose_universal(outer, inner)?;
        for (z, lz, zs) in &targets {
            let _ = z;
            let inner_val = lz.coeff(inner).clone();
            let lhs = m.lambda_k(&inner_val, outer)?;
            let rhs = poly.eval(m, &lz.coeffs()[1..=outer * inner]);
            report.push(
                format!("λ^{}(λ^{}({})) = P_{{{},{}}}", outer, inner, zs, outer, inner),
                lhs == rhs,
                if lhs == rhs { String::new() } else { format!("lhs {} vs rhs {}", m.format(&lhs), m.format(&rhs)) },
            );
        }
    }
    Ok(report)
}

/// Default bound: `Pₙ` for `n ≤ bound` and `P_{m,n}` for the default pairs with `m·n ≤ 2·bound`.
pub fn verify_special_pair(m: &RingModel, x: &GroupElement, y: &GroupElement, bound: usize) -> Result<Report, ModelError> {
    let pairs: Vec<(usize, usize)> =
        DEFAULT_COMPOSE_PAIRS.iter().copied().filter(|(a, b)| a * b <= 2 * bound && a * b <= m.truncation()).collect();
    verify_special_pair_with(m, x, y, bound, &pairs)
}

/// Runs [`verify_special_pair`] on every pair of basis generators.
pub fn verify_special_basis(m: &RingModel, bound: usize) -> Result<Report, ModelError> {
    let mut report = Report::default();
    for i in 0..m.rank() {
        for j in i..m.rank() {
            report.extend(verify_special_pair(m, &m.basis(i), &m.basis(j), bound)?);
        }
    }
    Ok(report)
}

pub fn default_truncation() -> usize {
    DEFAULT_TRUNCATION
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(g: &GroupPresentation, v: &[i64]) -> GroupElement {
        g.element_i64(v).unwrap()
    }

    /// ℤ[L]/(L² − 1) with λ_t(L) = 1 + Lt.
    fn gw_r() -> RingModel {
        let g = GroupPresentation::new(vec!["1".into(), "L".into()], vec![BigInt::zero(), BigInt::zero()]).unwrap();
        let mul = vec![
            MulEntry { i: 0, j: 0, product: e(&g, &[1, 0]) },
            MulEntry { i: 0, j: 1, product: e(&g, &[0, 1]) },
            MulEntry { i: 1, j: 1, product: e(&g, &[1, 0]) },
        ];
        RingModel::new(
            "gw_r",
            g.clone(),
            e(&g, &[1, 0]),
            mul,
            vec![BigInt::one(), BigInt::one()],
            vec![vec![e(&g, &[1, 0])], vec![e(&g, &[0, 1])]],
            Some(vec![e(&g, &[1, 1])]),
            16,
        )
        .unwrap()
    }

    #[test]
    fn line_squares_to_one() {
        let m = gw_r();
        let l = m.named("L").unwrap();
        assert_eq!(m.multiply(&l, &l), *m.unit());
        assert!(validate_model(&m).passed());
    }

    #[test]
    fn lambda_of_integer_is_binomial() {
        let m = gw_r();
        let five = m.from_int(5);
        let s = m.lambda_total(&five, 7).unwrap();
        for k in 0..=7 {
            assert_eq!(*s.coeff(k), m.from_int(crate::series::binomial(5, k).try_into().unwrap()));
        }
        let minus = m.from_int(-2);
        let s = m.lambda_total(&minus, 4).unwrap();
        // (1+t)^-2 = 1 - 2t + 3t² - 4t³ + 5t⁴
        assert_eq!(*s.coeff(3), m.from_int(-4));
    }

    #[test]
    fn lambda_of_line_minus_one() {
        let m = gw_r();
        let eta = m.parse_element("L - 1").unwrap();
        let s = m.lambda_total(&eta, 5).unwrap();
        // (1 + Lt)(1 + t)^{-1}: coefficient k is (-1)^{k-1}(L - 1)
        for k in 1..=5 {
            let expected = if k % 2 == 1 { eta.clone() } else { m.group().neg(&eta) };
            assert_eq!(*s.coeff(k), expected);
        }
        let g = m.gamma_total(&eta, 5).unwrap();
        assert_eq!(*g.coeff(1), eta);
        assert!((2..=5).all(|k| g.coeff(k).is_zero()));
    }

    #[test]
    fn adams_on_lines() {
        let m = gw_r();
        let l = m.named("L").unwrap();
        for k in 1..=6 {
            let expected = if k % 2 == 1 { l.clone() } else { m.unit().clone() };
            assert_eq!(m.psi_k(&l, k).unwrap(), expected);
        }
        assert_eq!(m.psi_k(&l, 0), Err(ModelError::Degree(1)));
    }

    #[test]
    fn corrupted_square_fails_validation() {
        let mut m = gw_r();
        let l = m.named("L").unwrap();
        m.mul_table[1][1] = l;
        let r = validate_model(&m);
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().name, "line elements square to one");
    }

    #[test]
    fn bad_lambda_two_is_named() {
        let mut m = gw_r();
        // λ²(L) = L has augmentation 1 ≠ C(1, 2)
        let l = m.named("L").unwrap();
        m.lambda_on_basis[1].push(l);
        let r = validate_model(&m);
        assert_eq!(r.first_failure().unwrap().name, "augmentation binomial compatibility");
    }

    #[test]
    fn special_axioms_on_gw_r() {
        let m = gw_r();
        let r = verify_special_basis(&m, 3).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn ring_elements_from_different_models() {
        let a = Arc::new(gw_r());
        let mut other = gw_r();
        other.name = "other".into();
        let b = Arc::new(other);
        let x = RingElement::new(a.clone(), a.unit().clone()).unwrap();
        let y = RingElement::new(b.clone(), b.unit().clone()).unwrap();
        assert_eq!(x.multiply(&y).unwrap_err(), ModelError::ModelMismatch);
        assert_eq!(x.multiply(&x).unwrap().value, *a.unit());
    }

    #[test]
    fn truncation_is_enforced() {
        let m = gw_r();
        assert!(matches!(m.lambda_total(m.unit(), 17), Err(ModelError::TruncationExceeded { .. })));
    }
}

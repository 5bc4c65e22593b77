//! Builtin Grothendieck–Witt models.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::{GroupElement, GroupPresentation};
use crate::lambdaring::{ModelError, MulEntry, RingModel};
use crate::series::{binomial, TruncSeries, DEFAULT_TRUNCATION};

pub const MAX_PROJECTIVE_DIM: usize = 12;
pub const MAX_SURFACE_TORSION: usize = 8;
pub const MAX_A5_EXPONENT: usize = 64;
pub const MIN_TRUNCATION: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    C,
    R,
}

impl FromStr for Base {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "C" | "c" => Ok(Base::C),
            "R" | "r" => Ok(Base::R),
            _ => Err(ModelError::Invalid(format!("unknown base `{}` (expected C or R)", s))),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::C => "C",
            Base::R => "R",
        })
    }
}

/// Raw data shared by the constructors before λ-series are attached.
struct Draft {
    names: Vec<String>,
    augmentation: Vec<BigInt>,
    mul: Vec<MulEntry>,
    group: GroupPresentation,
}

impl Draft {
    fn new(names: Vec<&str>, orders: Vec<u64>, augmentation: Vec<i64>) -> Draft {
        let names: Vec<String> = names.into_iter().map(String::from).collect();
        let orders: Vec<BigInt> = orders.into_iter().map(BigInt::from).collect();
        let group = GroupPresentation::new(names.clone(), orders.clone()).expect("builtin presentation");
        Draft { names, augmentation: augmentation.into_iter().map(BigInt::from).collect(), mul: Vec::new(), group }
    }

    fn e(&self, i: usize) -> GroupElement {
        self.group.basis_element(i)
    }

    fn set(&mut self, i: usize, j: usize, product: GroupElement) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.mul.retain(|m| !(m.i == i && m.j == j));
        self.mul.push(MulEntry { i, j, product });
    }

    /// Unit row `1·bᵢ = bᵢ` for basis index 0.
    fn unit_row(&mut self) {
        for i in 0..self.names.len() {
            let b = self.e(i);
            self.set(0, i, b);
        }
    }

    /// A model with placeholder λ-series, used for series arithmetic.
    fn skeleton(&self, truncation: usize) -> RingModel {
        let lambdas = (0..self.names.len()).map(|i| vec![self.e(i)]).collect();
        self.finish("draft", lambdas, None, truncation).expect("builtin shapes")
    }

    fn finish(
        &self,
        name: &str,
        lambdas: Vec<Vec<GroupElement>>,
        hyperbolic: Option<Vec<GroupElement>>,
        truncation: usize,
    ) -> Result<RingModel, ModelError> {
        RingModel::new(
            name,
            self.group.clone(),
            self.e(0),
            self.mul.clone(),
            self.augmentation.clone(),
            lambdas,
            hyperbolic,
            truncation,
        )
    }
}

fn series_tail(s: &TruncSeries<GroupElement>) -> Vec<GroupElement> {
    s.coeffs()[1..].to_vec()
}

fn check_truncation(n: usize) -> Result<(), ModelError> {
    if n < MIN_TRUNCATION {
        Err(ModelError::Invalid(format!("truncation must be at least {}", MIN_TRUNCATION)))
    } else {
        Ok(())
    }
}

/// `λ_t = 1 + x·t/(1+t)²`, the series of an `H(line − 1)` class.
fn hyperbolic_line_series(m: &RingModel, x: &GroupElement, n: usize) -> Vec<GroupElement> {
    (1..=n)
        .map(|k| {
            let c = if k % 2 == 1 { BigInt::from(k) } else { -BigInt::from(k) };
            m.group().scale(&c, x)
        })
        .collect()
}

/// `λ_t = (1 + (x+1)t)/(1 + t)`, the series of `line − 1`.
fn line_minus_one_series(m: &RingModel, x: &GroupElement, n: usize) -> Vec<GroupElement> {
    (1..=n).map(|k| if k % 2 == 1 { x.clone() } else { m.group().neg(x) }).collect()
}

/// `GW(ℂ) = ℤ` or `GW(ℝ) = ℤ[L]/(L² − 1)`.
pub fn gw_point(base: Base) -> RingModel {
    gw_point_truncated(base, DEFAULT_TRUNCATION).expect("default truncation is valid")
}

pub fn gw_point_truncated(base: Base, n: usize) -> Result<RingModel, ModelError> {
    check_truncation(n)?;
    match base {
        Base::C => {
            let mut d = Draft::new(vec!["1"], vec![0], vec![1]);
            d.unit_row();
            let two = d.group.scale(&BigInt::from(2), &d.e(0));
            d.finish("gw_point(C)", vec![vec![d.e(0)]], Some(vec![two]), n)
        }
        Base::R => {
            let mut d = Draft::new(vec!["1", "L"], vec![0, 0], vec![1, 1]);
            d.unit_row();
            d.set(1, 1, d.e(0));
            let h = d.group.add(&d.e(0), &d.e(1));
            d.finish("gw_point(R)", vec![vec![d.e(0)], vec![d.e(1)]], Some(vec![h]), n)
        }
    }
}

/// `⌈r/2⌉`.
pub fn rho(r: usize) -> usize {
    r.div_ceil(2)
}

/// Highest power of `a` present in the basis of `GW(ℙ^r)`.
pub fn projective_top(r: usize) -> usize {
    if r % 4 == 3 {
        rho(r) - 1
    } else {
        rho(r)
    }
}

/// Polynomials in one variable `a` over ℤ, lowest degree first.
pub type APoly = Vec<BigInt>;

fn apoly_trim(mut p: APoly) -> APoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn apoly_add(p: &APoly, q: &APoly) -> APoly {
    let n = p.len().max(q.len());
    let get = |v: &APoly, i: usize| v.get(i).cloned().unwrap_or_else(BigInt::zero);
    apoly_trim((0..n).map(|i| get(p, i) + get(q, i)).collect())
}

fn apoly_scale(k: &BigInt, p: &APoly) -> APoly {
    apoly_trim(p.iter().map(|c| k * c).collect())
}

fn apoly_mul(p: &APoly, q: &APoly) -> APoly {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    apoly_trim(out)
}

/// `a₀ = 0`, `a₁ = a`, `a_k = (a + 2)a_{k−1} − a_{k−2} + 2a`, as polynomials in `a`.
pub fn ak_polynomials(kmax: usize) -> Vec<APoly> {
    let a: APoly = vec![BigInt::zero(), BigInt::one()];
    let a_plus_2: APoly = vec![BigInt::from(2), BigInt::one()];
    let two_a = apoly_scale(&BigInt::from(2), &a);
    let mut out: Vec<APoly> = vec![Vec::new()];
    if kmax >= 1 {
        out.push(a.clone());
    }
    for k in 2..=kmax {
        let next = apoly_add(
            &apoly_add(&apoly_mul(&a_plus_2, &out[k - 1]), &apoly_scale(&-BigInt::one(), &out[k - 2])),
            &two_a,
        );
        out.push(next);
    }
    out
}

/// Coefficients `c_{ij}` with `aⁱ = Σ_{j≤i} c_{ij}·a_j`, for `1 ≤ i ≤ kmax`.
/// Row `i` is indexed by `j = 0..=i` (entry 0 unused).
pub fn powers_in_ak(kmax: usize) -> Vec<Vec<BigInt>> {
    let ak = ak_polynomials(kmax);
    let mut rows: Vec<Vec<BigInt>> = vec![Vec::new()];
    for i in 1..=kmax {
        // peel off leading terms: aⁱ − Σ c_{ij} a_j has degree < current
        let mut rem: APoly = vec![BigInt::zero(); i + 1];
        rem[i] = BigInt::one();
        let mut row = vec![BigInt::zero(); i + 1];
        for j in (1..=i).rev() {
            let c = rem.get(j).cloned().unwrap_or_else(BigInt::zero);
            if c.is_zero() {
                continue;
            }
            row[j] = c.clone();
            rem = apoly_add(&rem, &apoly_scale(&-c, &ak[j]));
        }
        debug_assert!(rem.is_empty(), "a_k has zero constant term and leading coefficient 1");
        rows.push(row);
    }
    rows
}

/// Evaluates a polynomial in `a` inside a model whose basis contains `a`.
pub fn eval_apoly(m: &RingModel, a: &GroupElement, p: &APoly) -> GroupElement {
    let mut acc = m.group().zero();
    let mut power = m.unit().clone();
    for c in p {
        if !c.is_zero() {
            acc = m.add(&acc, &m.group().scale(c, &power));
        }
        power = m.multiply(&power, a);
    }
    acc
}

/// `GW(ℙ^r)` over the base point.
pub fn gw_projective(base: Base, r: usize, n: usize) -> Result<RingModel, ModelError> {
    if r == 0 || r > MAX_PROJECTIVE_DIM {
        return Err(ModelError::Invalid(format!("projective dimension must lie in 1..={}", MAX_PROJECTIVE_DIM)));
    }
    check_truncation(n)?;
    let point = gw_point_truncated(base, n)?;
    let nb = point.rank();
    let top = projective_top(r);
    let rh = rho(r);

    let mut names: Vec<String> = point.group().names().to_vec();
    let mut orders: Vec<u64> = vec![0; nb];
    let mut aug: Vec<i64> = vec![1; nb];
    for i in 1..=top {
        names.push(if i == 1 { "a".to_string() } else { format!("a^{}", i) });
        orders.push(if r % 4 == 1 && i == rh { 2 } else { 0 });
        aug.push(0);
    }
    let mut d = Draft::new(names.iter().map(String::as_str).collect(), orders, aug);
    let embed = |x: &GroupElement| {
        let mut v = x.coeffs().to_vec();
        v.resize(nb + top, BigInt::zero());
        v
    };
    for i in 0..nb {
        for j in i..nb {
            let p = d.group.element(embed(point.structure_constant(i, j))).expect("base product");
            d.set(i, j, p);
        }
        for k in 1..=top {
            let p = d.group.scale(&point.augmentation()[i], &d.e(nb + k - 1));
            d.set(i, nb + k - 1, p);
        }
    }
    for i in 1..=top {
        for j in i..=top {
            let p = if i + j <= top { d.e(nb + i + j - 1) } else { d.group.zero() };
            d.set(nb + i - 1, nb + j - 1, p);
        }
    }

    let sk = d.skeleton(n);
    let a = d.e(nb);
    let one = sk.unit().clone();
    let (h1, line) = match base {
        Base::C => (sk.from_int(2), one.clone()),
        Base::R => (sk.add(&one, &d.e(1)), d.e(1)),
    };
    let denom = TruncSeries::from_coeffs(&sk, vec![one.clone(), h1.clone(), line.clone()], n);
    let inv = denom.inverse(&sk)?;
    let ak = ak_polynomials(top);
    let lambda_ak: Vec<TruncSeries<GroupElement>> = ak
        .iter()
        .map(|p| {
            let x = eval_apoly(&sk, &a, p);
            let num = TruncSeries::from_coeffs(&sk, vec![one.clone(), sk.add(&x, &h1), line.clone()], n);
            num.mul(&sk, &inv)
        })
        .collect::<Result<_, _>>()?;

    let mut lambdas: Vec<Vec<GroupElement>> =
        (0..nb).map(|i| point.lambda_of_basis(i).iter().map(|x| d.group.element(embed(x)).unwrap()).collect()).collect();
    let c = powers_in_ak(top);
    for i in 1..=top {
        let mut acc = TruncSeries::one(&sk, n);
        for j in 1..=i {
            if !c[i][j].is_zero() {
                acc = acc.mul(&sk, &lambda_ak[j].pow(&sk, &c[i][j])?)?;
            }
        }
        lambdas.push(series_tail(&acc));
    }

    let mut hyperbolic: Vec<GroupElement> =
        point.hyperbolic().unwrap_or(&[]).iter().map(|h| d.group.element(embed(h)).unwrap()).collect();
    hyperbolic.extend((1..=top).map(|i| d.e(nb + i - 1)));
    d.finish(&format!("gw_projective({}, r={})", base, r), lambdas, Some(hyperbolic), n)
}

/// Outcome of [`check_ak_recursion`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AkReport {
    /// `a_k` as polynomials in `a`, `k = 0..=kmax`.
    pub ak: Vec<APoly>,
    pub zero_constant_terms: bool,
    /// `Σ (−1)^j C(r+1, ρ−j)·a_j`, for odd `r`.
    pub h_r: Option<APoly>,
    /// `h_r = (−a)^ρ` in ℤ[a].
    pub h_r_polynomial: Option<bool>,
    /// `h_r = (−a)^ρ` in the model.
    pub h_r_in_model: Option<bool>,
    /// `∏ λ_t(a_j)^{±C(r+1, ρ−j)} = λ_t((−a)^ρ)` in the model.
    pub h_r_lambda: Option<bool>,
}

impl AkReport {
    pub fn passed(&self) -> bool {
        self.zero_constant_terms
            && self.h_r_polynomial.unwrap_or(true)
            && self.h_r_in_model.unwrap_or(true)
            && self.h_r_lambda.unwrap_or(true)
    }
}

/// Checks the `a_k` recursion and, for odd `r`, the identity `h_r = (−a)^ρ`.
pub fn check_ak_recursion(m: &RingModel, r: usize, kmax: usize) -> Result<AkReport, ModelError> {
    let a = m.named("a").ok_or_else(|| ModelError::Invalid("model has no generator `a`".into()))?;
    let rh = rho(r);
    let ak = ak_polynomials(kmax.max(rh));
    let zero_constant_terms = ak.iter().all(|p| p.first().is_none_or(|c| c.is_zero()));
    let mut report =
        AkReport { ak: ak[..=kmax].to_vec(), zero_constant_terms, h_r: None, h_r_polynomial: None, h_r_in_model: None, h_r_lambda: None };
    if r.is_multiple_of(2) {
        return Ok(report);
    }
    let coeff = |j: usize| {
        let b = binomial(r + 1, rh - j);
        if j % 2 == 1 {
            -b
        } else {
            b
        }
    };
    let mut h: APoly = Vec::new();
    for j in 1..=rh {
        h = apoly_add(&h, &apoly_scale(&coeff(j), &ak[j]));
    }
    let mut target: APoly = vec![BigInt::zero(); rh + 1];
    target[rh] = if rh % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    report.h_r_polynomial = Some(h == apoly_trim(target.clone()));
    report.h_r_in_model = Some(eval_apoly(m, &a, &h) == eval_apoly(m, &a, &target));

    let n = m.truncation();
    let (h1, line) = match m.named("L") {
        Some(l) => (m.add(m.unit(), &l), l),
        None => (m.from_int(2), m.unit().clone()),
    };
    let one = m.unit().clone();
    let inv = TruncSeries::from_coeffs(m, vec![one.clone(), h1.clone(), line.clone()], n).inverse(m)?;
    let mut lhs = TruncSeries::one(m, n);
    for j in 1..=rh {
        let x = eval_apoly(m, &a, &ak[j]);
        let s = TruncSeries::from_coeffs(m, vec![one.clone(), m.add(&x, &h1), line.clone()], n).mul(m, &inv)?;
        lhs = lhs.mul(m, &s.pow(m, &coeff(j))?)?;
    }
    let rhs = m.lambda_total(&eval_apoly(m, &a, &target), n)?;
    report.h_r_lambda = Some(lhs == rhs);
    report.h_r = Some(h);
    Ok(report)
}

/// `GW(𝔸¹∖0)` over ℝ: basis `1, L, ε̂` with `ε̂ = ε − 1`.
pub fn gw_punctured_line(n: usize) -> Result<RingModel, ModelError> {
    check_truncation(n)?;
    let mut d = Draft::new(vec!["1", "L", "e"], vec![0, 0, 0], vec![1, 1, 0]);
    d.unit_row();
    d.set(1, 1, d.e(0));
    d.set(1, 2, d.group.neg(&d.e(2)));
    d.set(2, 2, d.group.scale(&BigInt::from(-2), &d.e(2)));
    let sk = d.skeleton(n);
    let lambdas = vec![vec![d.e(0)], vec![d.e(1)], line_minus_one_series(&sk, &d.e(2), n)];
    let h = d.group.add(&d.e(0), &d.e(1));
    d.finish("gw_punctured_line(R)", lambdas, Some(vec![h]), n)
}

/// `c_i = C(2^{f−1}, i)·2^{i−f}` for `i = 1..=n`; every value is an integer.
pub fn a5_coefficients(f: usize, n: usize) -> Result<Vec<BigInt>, ModelError> {
    if !(2..=MAX_A5_EXPONENT).contains(&f) {
        return Err(ModelError::Invalid(format!("exponent f must lie in 2..={}", MAX_A5_EXPONENT)));
    }
    let top = BigInt::one() << (f - 1);
    let den = BigInt::one() << f;
    let mut out = Vec::with_capacity(n);
    let mut binom = BigInt::one();
    for i in 1..=n {
        binom = binom * (&top - BigInt::from(i - 1)) / BigInt::from(i);
        let num = &binom << i;
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(ModelError::Invalid(format!("c_{} is not integral for f = {}", i, f)));
        }
        out.push(q);
    }
    Ok(out)
}

/// `c_i mod 2` for `i = 1..=n`.
pub fn a5_reduced_coefficients(f: usize, n: usize) -> Result<Vec<u8>, ModelError> {
    Ok(a5_coefficients(f, n)?.iter().map(|c| if c.is_odd() { 1 } else { 0 }).collect())
}

/// `GW(𝔸⁵∖0)` over ℂ: basis `1, ε̂` with `2ε̂ = 0`, `ε̂² = 0` and `γ_i(ε̂) = c_i·ε̂`.
pub fn gw_punctured_a5(f: usize, n: usize) -> Result<RingModel, ModelError> {
    check_truncation(n)?;
    let reduced = a5_reduced_coefficients(f, n)?;
    for g in 2..=6 {
        if a5_reduced_coefficients(g, n)? != reduced {
            return Err(ModelError::Invalid(format!("reduced coefficients differ between f = {} and f = {}", f, g)));
        }
    }
    let mut d = Draft::new(vec!["1", "e"], vec![0, 2], vec![1, 0]);
    d.unit_row();
    d.set(1, 1, d.group.zero());
    let sk = d.skeleton(n);
    let eps = d.e(1);
    let mut gamma = vec![sk.unit().clone()];
    gamma.extend(reduced.iter().map(|&c| if c == 1 { eps.clone() } else { d.group.zero() }));
    let lambda = TruncSeries::from_coeffs(&sk, gamma, n).lambda_from_gamma(&sk);
    let lambdas = vec![vec![d.e(0)], series_tail(&lambda)];
    let two = d.group.scale(&BigInt::from(2), &d.e(0));
    d.finish(&format!("gw_punctured_a5(f={})", f), lambdas, Some(vec![two]), n)
}

/// `GW(C × ℙ¹)` for a curve with `Pic(C)[2] ≅ (ℤ/2)^s` and `Pic` free of rank one.
pub fn gw_surface_cxp1(s: usize, n: usize) -> Result<RingModel, ModelError> {
    if s > MAX_SURFACE_TORSION {
        return Err(ModelError::Invalid(format!("s must be at most {}", MAX_SURFACE_TORSION)));
    }
    check_truncation(n)?;
    let mut names = vec!["1".to_string()];
    names.extend((1..=s).map(|j| format!("a{}", j)));
    names.extend(["b".to_string(), "c".to_string(), "d0".to_string()]);
    names.extend((1..=s).map(|j| format!("d{}", j)));
    let mut orders = vec![0u64];
    orders.extend(std::iter::repeat_n(2, s + 2));
    orders.push(0);
    orders.extend(std::iter::repeat_n(2, s));
    let rank = names.len();
    let mut aug = vec![0i64; rank];
    aug[0] = 1;
    let mut d = Draft::new(names.iter().map(String::as_str).collect(), orders, aug);
    let ai = |j: usize| j;
    let b = s + 1;
    let c = s + 2;
    let dp = |k: usize| s + 3 + k;
    d.unit_row();
    for j in 1..=s {
        let target = d.group.add(&d.e(dp(j)), &d.e(c));
        d.set(ai(j), c, target.clone());
        for k in 0..=s {
            d.set(ai(j), dp(k), target.clone());
        }
    }
    let sk = d.skeleton(n);
    let mut lambdas = vec![vec![d.e(0)]];
    for j in 1..=s {
        lambdas.push(line_minus_one_series(&sk, &d.e(ai(j)), n));
    }
    for i in b..rank {
        lambdas.push(hyperbolic_line_series(&sk, &d.e(i), n));
    }
    let hyperbolic = (b..rank).map(|i| d.e(i)).collect();
    d.finish(&format!("gw_surface_cxp1(s={})", s), lambdas, Some(hyperbolic), n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    PointC,
    PointR,
    Projective,
    PuncturedLine,
    PuncturedA5,
    Surface,
}

impl Builtin {
    pub const ALL: [Builtin; 6] =
        [Builtin::PointC, Builtin::PointR, Builtin::Projective, Builtin::PuncturedLine, Builtin::PuncturedA5, Builtin::Surface];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::PointC => "gw_point_C",
            Builtin::PointR => "gw_point_R",
            Builtin::Projective => "gw_projective",
            Builtin::PuncturedLine => "gw_punctured_line",
            Builtin::PuncturedA5 => "gw_punctured_a5",
            Builtin::Surface => "gw_surface_cxp1",
        }
    }
}

/// Name plus parameters of a builtin model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltinSpec {
    pub which: Builtin,
    pub r: usize,
    pub base: Base,
    pub f: usize,
    pub s: usize,
    pub truncation: usize,
}

impl BuiltinSpec {
    pub fn new(which: Builtin) -> Self {
        BuiltinSpec { which, r: 2, base: Base::C, f: 3, s: 1, truncation: DEFAULT_TRUNCATION }
    }

    /// Resolves a name; `gw_point` picks its field from `base`.
    pub fn parse(name: &str, base: Base) -> Result<Self, ModelError> {
        let which = match name {
            "gw_point" => match base {
                Base::C => Builtin::PointC,
                Base::R => Builtin::PointR,
            },
            _ => *Builtin::ALL
                .iter()
                .find(|b| b.name() == name)
                .ok_or_else(|| ModelError::Invalid(format!("unknown builtin `{}`", name)))?,
        };
        Ok(BuiltinSpec { base, ..BuiltinSpec::new(which) })
    }

    pub fn build(&self) -> Result<RingModel, ModelError> {
        let n = self.truncation;
        match self.which {
            Builtin::PointC => gw_point_truncated(Base::C, n),
            Builtin::PointR => gw_point_truncated(Base::R, n),
            Builtin::Projective => gw_projective(self.base, self.r, n),
            Builtin::PuncturedLine => gw_punctured_line(n),
            Builtin::PuncturedA5 => gw_punctured_a5(self.f, n),
            Builtin::Surface => gw_surface_cxp1(self.s, n),
        }
    }
}

/// A representative set of builtin instances.
pub fn all_builtins() -> Vec<BuiltinSpec> {
    let mut out = vec![BuiltinSpec::new(Builtin::PointC), BuiltinSpec::new(Builtin::PointR)];
    for base in [Base::C, Base::R] {
        for r in 1..=7 {
            out.push(BuiltinSpec { r, base, ..BuiltinSpec::new(Builtin::Projective) });
        }
    }
    out.push(BuiltinSpec::new(Builtin::PuncturedLine));
    for f in [2, 3, 5] {
        out.push(BuiltinSpec { f, ..BuiltinSpec::new(Builtin::PuncturedA5) });
    }
    for s in 0..=3 {
        out.push(BuiltinSpec { s, ..BuiltinSpec::new(Builtin::Surface) });
    }
    out
}

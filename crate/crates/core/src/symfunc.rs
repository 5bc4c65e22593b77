//! Integer multivariate polynomials and the symmetric-function kernel:
//! elementary polynomials, conversion to the elementary basis, Newton's
//! power sums, complete symmetric functions and the universal polynomials
//! `Pₙ` (λ of a product) and `P_{m,n}` (λ of a λ).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::series::CoeffRing;

/// Largest `n` for which `Pₙ` is materialized.
pub const MAX_PRODUCT_DEGREE: usize = 4;
/// Largest `m·n` for which `P_{m,n}` is materialized.
pub const MAX_COMPOSE_WEIGHT: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("polynomial is not symmetric in its variable blocks")]
    NotSymmetric,
    #[error("variable blocks cover {blocks} variables but the polynomial has {nvars}")]
    BlockMismatch { blocks: usize, nvars: usize },
    #[error("universal polynomial bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCount(usize, usize),
}

pub type Exponent = Vec<u32>;

/// Sparse polynomial over ℤ; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exp: Exponent, c: BigInt) -> Self {
        let mut p = Self::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Swaps two variables.
    pub fn transpose(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            out.terms.insert(e, c.clone());
        }
        out
    }

    /// Symmetric under permutations inside each consecutive block of variables.
    pub fn is_block_symmetric(&self, blocks: &[usize]) -> bool {
        let mut start = 0;
        for &b in blocks {
            for i in start..start + b.saturating_sub(1) {
                if &self.transpose(i, i + 1) != self {
                    return false;
                }
            }
            start += b;
        }
        true
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_block_symmetric(&[self.nvars])
    }

    /// Evaluates at `vals` in any coefficient ring.
    pub fn eval<R: CoeffRing>(&self, ring: &R, vals: &[R::Elem]) -> R::Elem {
        assert_eq!(vals.len(), self.nvars, "one value per variable");
        let mut powers: Vec<Vec<R::Elem>> = vals.iter().map(|v| vec![ring.one(), v.clone()]).collect();
        let mut acc = ring.zero();
        for (e, c) in &self.terms {
            let mut term = ring.integer(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = ring.mul(powers[i].last().unwrap(), &vals[i]);
                    powers[i].push(next);
                }
                term = ring.mul(&term, &powers[i][k as usize]);
                if ring.is_zero(&term) {
                    break;
                }
            }
            acc = ring.add(&acc, &term);
        }
        acc
    }

    /// Substitutes polynomials (all in a common variable count) for the variables.
    pub fn compose(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map(|s| s.nvars).unwrap_or(0);
        self.eval(&PolyRing(target), subs)
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", mag, mono.join("*"))
            };
            if idx == 0 {
                out.push_str(&if c.is_negative() { format!("-{}", body) } else { body });
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.format_with(&names))
    }
}

/// `ℤ[x₁..xₙ]` as a coefficient ring, for composition.
#[derive(Debug, Clone, Copy)]
pub struct PolyRing(pub usize);

impl CoeffRing for PolyRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.0)
    }
    fn one(&self) -> MultiPoly {
        MultiPoly::one(self.0)
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.add(b)
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        a.neg()
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.mul(b)
    }
    fn scale(&self, k: &BigInt, a: &MultiPoly) -> MultiPoly {
        a.scale(k)
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
}

/// Elementary symmetric polynomial `e_k(x₁..xₙ)`; zero when `k > n`.
pub fn elementary(n: usize, k: usize) -> MultiPoly {
    elementary_in(n, 0, n, k)
}

// e_k in the variables start..start+len of an nvars-variable ring
fn elementary_in(nvars: usize, start: usize, len: usize, k: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    if k > len {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut e = vec![0u32; nvars];
        for &i in &idx {
            e[start + i] = 1;
        }
        out.add_term(e, BigInt::one());
        // next k-subset in lexicographic order
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] < len - k + pos {
                break;
            }
        }
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Fundamental theorem of symmetric polynomials by lexicographic leading-term
/// elimination. The result lives in the variables `e₁..eₙ`.
pub fn to_elementary(p: &MultiPoly) -> Result<MultiPoly, SymError> {
    to_elementary_blocks(p, &[p.nvars()])
}

/// Block version: `p` symmetric in each block separately. Block `j` of size `b`
/// maps to the elementary variables `e₁..e_b` of that block, in the same slots.
pub fn to_elementary_blocks(p: &MultiPoly, blocks: &[usize]) -> Result<MultiPoly, SymError> {
    let total: usize = blocks.iter().sum();
    if total != p.nvars() {
        return Err(SymError::BlockMismatch { blocks: total, nvars: p.nvars() });
    }
    if !p.is_block_symmetric(blocks) {
        return Err(SymError::NotSymmetric);
    }
    let n = p.nvars();
    let mut elem: Vec<MultiPoly> = Vec::with_capacity(n);
    let mut start = 0;
    for &b in blocks {
        for k in 1..=b {
            elem.push(elementary_in(n, start, b, k));
        }
        start += b;
    }
    let mut power_cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
    let mut rem = p.clone();
    let mut out = MultiPoly::zero(n);
    while let Some((lead, c)) = rem.leading_term() {
        let (lead, c) = (lead.clone(), c.clone());
        let mut gamma = vec![0u32; n];
        let mut start = 0;
        for &b in blocks {
            for j in 0..b {
                let here = lead[start + j];
                let next = if j + 1 < b { lead[start + j + 1] } else { 0 };
                if here < next {
                    return Err(SymError::NotSymmetric);
                }
                gamma[start + j] = here - next;
            }
            start += b;
        }
        let mut expanded = MultiPoly::constant(n, c.clone());
        for (slot, &g) in gamma.iter().enumerate() {
            if g == 0 {
                continue;
            }
            let pw = power_cache.entry((slot, g)).or_insert_with(|| elem[slot].pow(g)).clone();
            expanded = expanded.mul(&pw);
        }
        out.add_term(gamma, c);
        rem = rem.sub(&expanded);
    }
    Ok(out)
}

/// Power sum `p_k` in the elementary variables `e₁..e_k` (Newton's identities).
pub fn newton_psi(k: usize) -> MultiPoly {
    assert!(k >= 1, "Adams operations start at degree 1");
    let e = |i: usize| MultiPoly::var(k, i - 1);
    let mut p: Vec<MultiPoly> = vec![MultiPoly::zero(k)];
    for j in 1..=k {
        let mut acc = e(j).scale(&BigInt::from(j));
        if j % 2 == 0 {
            acc = acc.neg();
        }
        for i in 1..j {
            let term = e(i).mul(&p[j - i]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        p.push(acc);
    }
    p.pop().unwrap()
}

/// Complete symmetric function `σ_k` in `e₁..e_k` from `Σᵢ (−1)ⁱ eᵢ σ_{k−i} = 0`.
pub fn complete_sigma(k: usize) -> MultiPoly {
    let nv = k.max(1);
    let e = |i: usize| MultiPoly::var(nv, i - 1);
    let mut s: Vec<MultiPoly> = vec![MultiPoly::one(nv)];
    for j in 1..=k {
        let mut acc = MultiPoly::zero(nv);
        for i in 1..=j {
            let term = e(i).mul(&s[j - i]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        s.push(acc);
    }
    s.pop().unwrap()
}

fn coefficient_of_product(nvars: usize, factors: &[MultiPoly], degree: usize) -> MultiPoly {
    // coefficients of ∏ (1 + f·t) up to t^degree
    let mut c: Vec<MultiPoly> = vec![MultiPoly::zero(nvars); degree + 1];
    c[0] = MultiPoly::one(nvars);
    for f in factors {
        for k in (1..=degree).rev() {
            if c[k - 1].is_zero() {
                continue;
            }
            let add = c[k - 1].mul(f);
            c[k] = c[k].add(&add);
        }
    }
    c.pop().unwrap()
}

fn compute_product_universal(n: usize) -> MultiPoly {
    let nv = 2 * n;
    let mut factors = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            factors.push(MultiPoly::var(nv, i).mul(&MultiPoly::var(nv, n + j)));
        }
    }
    let coeff = coefficient_of_product(nv, &factors, n);
    to_elementary_blocks(&coeff, &[n, n]).expect("product coefficient is block symmetric")
}

fn compute_compose_universal(m: usize, n: usize) -> MultiPoly {
    let nv = m * n;
    let factors: Vec<MultiPoly> = elementary(nv, n).terms().keys().map(|e| MultiPoly::monomial(e.clone(), BigInt::one())).collect();
    let coeff = coefficient_of_product(nv, &factors, m);
    to_elementary(&coeff).expect("composition coefficient is symmetric")
}

/// Memo table for the universal polynomials; concurrent readers, locked writers.
#[derive(Default)]
pub struct UniversalCache {
    product: RwLock<HashMap<usize, Arc<MultiPoly>>>,
    compose: RwLock<HashMap<(usize, usize), Arc<MultiPoly>>>,
}

impl UniversalCache {
    pub fn global() -> &'static UniversalCache {
        static CACHE: OnceLock<UniversalCache> = OnceLock::new();
        CACHE.get_or_init(UniversalCache::default)
    }

    pub fn product(&self, n: usize) -> Result<Arc<MultiPoly>, SymError> {
        if n == 0 || n > MAX_PRODUCT_DEGREE {
            return Err(SymError::BoundExceeded(format!("P_{} (supported 1..={})", n, MAX_PRODUCT_DEGREE)));
        }
        if let Some(p) = self.product.read().unwrap().get(&n) {
            return Ok(p.clone());
        }
        let p = Arc::new(compute_product_universal(n));
        Ok(self.product.write().unwrap().entry(n).or_insert(p).clone())
    }

    pub fn compose(&self, m: usize, n: usize) -> Result<Arc<MultiPoly>, SymError> {
        if m == 0 || n == 0 || m * n > MAX_COMPOSE_WEIGHT {
            return Err(SymError::BoundExceeded(format!(
                "P_{{{},{}}} (need m·n ≤ {})",
                m, n, MAX_COMPOSE_WEIGHT
            )));
        }
        if let Some(p) = self.compose.read().unwrap().get(&(m, n)) {
            return Ok(p.clone());
        }
        let p = Arc::new(compute_compose_universal(m, n));
        Ok(self.compose.write().unwrap().entry((m, n)).or_insert(p).clone())
    }
}

/// `Pₙ` in the variables `e₁..eₙ, f₁..fₙ` (λ of x, λ of y).
pub fn product_universal(n: usize) -> Result<Arc<MultiPoly>, SymError> {
    UniversalCache::global().product(n)
}

/// `P_{m,n}` in the variables `e₁..e_{mn}`.
pub fn compose_universal(m: usize, n: usize) -> Result<Arc<MultiPoly>, SymError> {
    UniversalCache::global().compose(m, n)
}

pub fn product_variable_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{}", i)).chain((1..=n).map(|i| format!("f{}", i))).collect()
}

pub fn elementary_variable_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{}", i)).collect()
}

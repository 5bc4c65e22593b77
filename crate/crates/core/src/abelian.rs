//! Finitely generated abelian groups `⊕ ℤ/oᵢ` with exact subgroup arithmetic.
//!
//! Every subgroup is stored as the Hermite normal form of its generating
//! lattice inside the free cover `ℤⁿ`, augmented by the relation lattice
//! `{oᵢ·eᵢ}`. Two subgroups are equal exactly when their matrices are equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("presentation has {names} names but {orders} orders")]
    ShapeMismatch { names: usize, orders: usize },
    #[error("negative order {0} in presentation")]
    NegativeOrder(BigInt),
    #[error("subgroups live in different presentations")]
    PresentationMismatch,
    #[error("subgroup is not contained in the ambient subgroup")]
    NotContained,
}

pub type Matrix = Vec<Vec<BigInt>>;

/// `⊕ᵢ ℤ/oᵢ` with `oᵢ = 0` meaning a free summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    orders: Vec<BigInt>,
    names: Vec<String>,
}

/// Canonical coefficient vector; torsion coordinates live in `[0, oᵢ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<BigInt>);

impl GroupElement {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl GroupPresentation {
    pub fn new(names: Vec<String>, orders: Vec<BigInt>) -> Result<Self, GroupError> {
        if names.len() != orders.len() {
            return Err(GroupError::ShapeMismatch { names: names.len(), orders: orders.len() });
        }
        if let Some(o) = orders.iter().find(|o| o.is_negative()) {
            return Err(GroupError::NegativeOrder(o.clone()));
        }
        Ok(GroupPresentation { orders, names })
    }

    /// Presentation from small orders with generated names `g0, g1, …`.
    pub fn from_orders(orders: &[u64]) -> Self {
        let names = (0..orders.len()).map(|i| format!("g{}", i)).collect();
        GroupPresentation { orders: orders.iter().map(|&o| BigInt::from(o)).collect(), names }
    }

    pub fn free(rank: usize) -> Self {
        Self::from_orders(&vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_torsion_coordinate(&self, i: usize) -> bool {
        !self.orders[i].is_zero()
    }

    fn check_len(&self, found: usize) -> Result<(), GroupError> {
        if found != self.rank() {
            Err(GroupError::Dimension { expected: self.rank(), found })
        } else {
            Ok(())
        }
    }

    /// Reduces an arbitrary integer vector to its canonical element.
    pub fn element(&self, coeffs: Vec<BigInt>) -> Result<GroupElement, GroupError> {
        self.check_len(coeffs.len())?;
        Ok(self.reduce(coeffs))
    }

    pub fn element_i64(&self, coeffs: &[i64]) -> Result<GroupElement, GroupError> {
        self.element(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub(crate) fn reduce(&self, mut coeffs: Vec<BigInt>) -> GroupElement {
        for (c, o) in coeffs.iter_mut().zip(&self.orders) {
            if !o.is_zero() {
                *c = c.mod_floor(o);
            }
        }
        GroupElement(coeffs)
    }

    pub fn check(&self, x: &GroupElement) -> Result<(), GroupError> {
        self.check_len(x.len())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![BigInt::zero(); self.rank()])
    }

    pub fn basis_element(&self, i: usize) -> GroupElement {
        let mut v = vec![BigInt::zero(); self.rank()];
        v[i] = BigInt::one();
        self.reduce(v)
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.reduce(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.reduce(x.0.iter().zip(&y.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        self.reduce(x.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt, x: &GroupElement) -> GroupElement {
        self.reduce(x.0.iter().map(|a| a * k).collect())
    }

    /// Order of an element; `0` for elements of infinite order.
    pub fn element_order(&self, x: &GroupElement) -> BigInt {
        let mut acc = BigInt::one();
        for (c, o) in x.0.iter().zip(&self.orders) {
            if c.is_zero() {
                continue;
            }
            if o.is_zero() {
                return BigInt::zero();
            }
            let ord = o / c.gcd(o);
            acc = acc.lcm(&ord);
        }
        acc
    }

    /// Relation vectors `oᵢ·eᵢ` for the torsion coordinates.
    pub fn relations(&self) -> Matrix {
        self.orders
            .iter()
            .enumerate()
            .filter(|(_, o)| !o.is_zero())
            .map(|(i, o)| {
                let mut v = vec![BigInt::zero(); self.rank()];
                v[i] = o.clone();
                v
            })
            .collect()
    }

    /// Product of the finite orders if the group is finite.
    pub fn finite_order(&self) -> Option<BigInt> {
        if self.orders.iter().any(Zero::is_zero) {
            None
        } else {
            Some(self.orders.iter().product())
        }
    }

    /// All elements whose free coordinates vanish (the torsion subgroup).
    pub fn torsion_elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.zero()];
        for (i, o) in self.orders.iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            let o = o.to_string().parse::<u64>().expect("torsion order fits u64");
            let mut next = Vec::with_capacity(out.len() * o as usize);
            for x in &out {
                for k in 0..o {
                    let mut y = x.clone();
                    y.0[i] = BigInt::from(k);
                    next.push(y);
                }
            }
            out = next;
        }
        out
    }

    /// Invariant factors of the group itself.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let zero = Subgroup::zero(self);
        quotient_invariants(self, &zero).expect("same presentation")
    }

    pub fn format_element(&self, x: &GroupElement) -> String {
        let mut parts = Vec::new();
        for (c, name) in x.0.iter().zip(&self.names) {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(name.clone());
            } else if *c == -BigInt::one() {
                parts.push(format!("-{}", name));
            } else {
                parts.push(format!("{}*{}", c, name));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

/// A subgroup of a presented group, kept as a canonical HNF basis of its
/// preimage lattice in the free cover.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    orders: Vec<BigInt>,
    basis: Matrix,
}

impl Subgroup {
    pub fn zero(pres: &GroupPresentation) -> Self {
        Subgroup { orders: pres.orders.clone(), basis: hnf(pres.relations(), pres.rank()) }
    }

    pub fn whole(pres: &GroupPresentation) -> Self {
        let gens: Vec<GroupElement> = (0..pres.rank()).map(|i| pres.basis_element(i)).collect();
        Subgroup::from_generators(pres, &gens).expect("basis has correct length")
    }

    pub fn from_generators(pres: &GroupPresentation, gens: &[GroupElement]) -> Result<Self, GroupError> {
        let mut rows = pres.relations();
        for g in gens {
            pres.check(g)?;
            rows.push(g.0.clone());
        }
        Ok(Subgroup { orders: pres.orders.clone(), basis: hnf(rows, pres.rank()) })
    }

    pub fn from_vectors(pres: &GroupPresentation, gens: Matrix) -> Result<Self, GroupError> {
        let mut rows = pres.relations();
        for g in gens {
            pres.check_len(g.len())?;
            rows.push(g);
        }
        Ok(Subgroup { orders: pres.orders.clone(), basis: hnf(rows, pres.rank()) })
    }

    /// The HNF rows, relation lattice included.
    pub fn matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn ambient_rank(&self) -> usize {
        self.orders.len()
    }

    fn same_pres(&self, other: &Subgroup) -> Result<(), GroupError> {
        if self.orders.len() != other.orders.len() {
            return Err(GroupError::Dimension { expected: self.orders.len(), found: other.orders.len() });
        }
        if self.orders != other.orders {
            return Err(GroupError::PresentationMismatch);
        }
        Ok(())
    }

    pub fn contains(&self, x: &GroupElement) -> Result<bool, GroupError> {
        if x.len() != self.orders.len() {
            return Err(GroupError::Dimension { expected: self.orders.len(), found: x.len() });
        }
        Ok(lattice_coordinates(&self.basis, &x.0).is_some())
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool, GroupError> {
        self.same_pres(other)?;
        Ok(self.basis.iter().all(|row| lattice_coordinates(&other.basis, row).is_some()))
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup, GroupError> {
        self.same_pres(other)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subgroup { orders: self.orders.clone(), basis: hnf(rows, self.orders.len()) })
    }

    /// Adds one vector, returning whether the subgroup grew.
    pub fn absorb(&mut self, v: &[BigInt]) -> bool {
        if lattice_coordinates(&self.basis, v).is_some() {
            return false;
        }
        let mut rows = std::mem::take(&mut self.basis);
        rows.push(v.to_vec());
        self.basis = hnf(rows, self.orders.len());
        true
    }

    /// Generators as canonical group elements, zero elements dropped.
    pub fn generators(&self, pres: &GroupPresentation) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = Vec::new();
        for row in &self.basis {
            let g = pres.reduce(row.clone());
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        out
    }

    pub fn is_trivial(&self, pres: &GroupPresentation) -> bool {
        self.generators(pres).is_empty()
    }
}

pub fn subgroups_equal(s1: &Subgroup, s2: &Subgroup) -> Result<bool, GroupError> {
    s1.same_pres(s2)?;
    Ok(s1.basis == s2.basis)
}

/// Invariant factors of `pres / s`, ones suppressed, free summands (`0`) last.
pub fn quotient_invariants(pres: &GroupPresentation, s: &Subgroup) -> Result<Vec<BigInt>, GroupError> {
    if s.orders != pres.orders {
        return Err(if s.orders.len() != pres.rank() {
            GroupError::Dimension { expected: pres.rank(), found: s.orders.len() }
        } else {
            GroupError::PresentationMismatch
        });
    }
    Ok(invariants_of_cokernel(&s.basis, pres.rank()))
}

/// Invariant factors of `big / small`, computed in the lattice coordinates of `big`.
pub fn relative_quotient_invariants(big: &Subgroup, small: &Subgroup) -> Result<Vec<BigInt>, GroupError> {
    big.same_pres(small)?;
    let mut coords = Vec::with_capacity(small.basis.len());
    for row in &small.basis {
        coords.push(lattice_coordinates(&big.basis, row).ok_or(GroupError::NotContained)?);
    }
    Ok(invariants_of_cokernel(&coords, big.basis.len()))
}

fn invariants_of_cokernel(rows: &Matrix, ncols: usize) -> Vec<BigInt> {
    let diag = smith_diagonal(rows, ncols);
    let rank = diag.len();
    let mut out: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_one()).collect();
    out.extend(std::iter::repeat_n(BigInt::zero(), ncols - rank));
    out
}

/// Product of the nonzero invariant factors, or `None` if the quotient is infinite.
pub fn invariants_order(inv: &[BigInt]) -> Option<BigInt> {
    if inv.iter().any(Zero::is_zero) {
        None
    } else {
        Some(inv.iter().product())
    }
}

pub fn format_invariants(inv: &[BigInt]) -> String {
    if inv.is_empty() {
        return "0".to_string();
    }
    inv.iter()
        .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{}", d) })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Row-style Hermite normal form: echelon rows with positive pivots and the
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf(mut rows: Matrix, ncols: usize) -> Matrix {
    let mut r = 0;
    for col in 0..ncols {
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if rows[b][col].abs() <= rows[i][col].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in (r + 1)..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &q * p;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r >= rows.len() || rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot = rows[r].clone();
        for i in 0..r {
            let q = rows[i][col].div_floor(&pivot[col]);
            if q.is_zero() {
                continue;
            }
            for (x, p) in rows[i].iter_mut().zip(&pivot) {
                *x -= &q * p;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn pivot_of(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Solves `x = Σ cₖ·basisₖ` by back-substitution against an HNF basis.
pub fn lattice_coordinates(basis: &Matrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rem = x.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let p = pivot_of(row).expect("HNF rows are nonzero");
        if rem[..p].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let (q, m) = rem[p].div_mod_floor(&row[p]);
        if !m.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (v, b) in rem.iter_mut().zip(row) {
                *v -= &q * b;
            }
        }
        coords.push(q);
    }
    if rem.iter().all(Zero::is_zero) {
        Some(coords)
    } else {
        None
    }
}

/// Result of a Smith reduction `U·M·V = D` keeping only the column transform.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    /// Unimodular `ncols × ncols` column transform `V`.
    pub column_transform: Matrix,
}

pub fn smith_diagonal(rows: &Matrix, ncols: usize) -> Vec<BigInt> {
    smith(rows, ncols, false).diagonal
}

/// Smith normal form. The diagonal is positive with `d₁ | d₂ | …`; its length is the rank.
pub fn smith(rows: &Matrix, ncols: usize, track: bool) -> SmithForm {
    let mut m: Matrix = rows.clone();
    let nrows = m.len();
    let mut v: Matrix = if track { identity(ncols) } else { Vec::new() };
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if m[i][j].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if m[bi][bj].abs() <= m[i][j].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        swap_cols(&mut m, t, bj);
        if track {
            swap_cols(&mut v, t, bj);
        }
        let mut clean = true;
        for i in (t + 1)..nrows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            let pivot = m[t].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot) {
                *x -= &q * p;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in (t + 1)..ncols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            col_axpy(&mut m, j, t, &q);
            if track {
                col_axpy(&mut v, j, t, &q);
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility of the trailing block
        let mut bad_row = None;
        'outer: for i in (t + 1)..nrows {
            for j in (t + 1)..ncols {
                if !m[i][j].is_multiple_of(&m[t][t]) {
                    bad_row = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = bad_row {
            let src = m[i].clone();
            for (x, s) in m[t].iter_mut().zip(&src) {
                *x += s;
            }
            continue;
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let diagonal = (0..t).map(|i| m[i][i].clone()).collect();
    SmithForm { diagonal, column_transform: v }
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn swap_cols(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

// column j -= q * column t
fn col_axpy(m: &mut Matrix, j: usize, t: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let delta = q * &row[t];
        row[j] -= delta;
    }
}

/// Basis (in HNF) of the integer kernel `{x ∈ ℤⁿ : M·x = 0}` of an `m × n` matrix.
pub fn integer_kernel(rows: &Matrix, ncols: usize) -> Matrix {
    let m = rows.len();
    // rows of [Mᵀ | I]; after HNF the rows with vanishing left block span the kernel
    let aug: Matrix = (0..ncols)
        .map(|j| {
            let mut r: Vec<BigInt> = rows.iter().map(|row| row[j].clone()).collect();
            r.extend((0..ncols).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let reduced = hnf(aug, m + ncols);
    let kernel: Matrix = reduced
        .into_iter()
        .filter(|r| r[..m].iter().all(Zero::is_zero))
        .map(|r| r[m..].to_vec())
        .collect();
    hnf(kernel, ncols)
}

/// Projection `A → A/H` onto an explicit presentation of the quotient.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source_rank: usize,
    target: GroupPresentation,
    transform: Matrix,
    keep: Vec<usize>,
}

impl QuotientMap {
    pub fn new(pres: &GroupPresentation, kernel: &Subgroup, prefix: &str) -> Result<Self, GroupError> {
        if kernel.orders != pres.orders {
            return Err(GroupError::PresentationMismatch);
        }
        let n = pres.rank();
        let form = smith(&kernel.basis, n, true);
        let mut orders = Vec::new();
        let mut keep = Vec::new();
        for j in 0..n {
            let d = form.diagonal.get(j).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            keep.push(j);
            orders.push(d);
        }
        let names = (0..keep.len()).map(|i| format!("{}{}", prefix, i)).collect();
        Ok(QuotientMap {
            source_rank: n,
            target: GroupPresentation::new(names, orders)?,
            transform: form.column_transform,
            keep,
        })
    }

    pub fn target(&self) -> &GroupPresentation {
        &self.target
    }

    pub fn apply_vector(&self, x: &[BigInt]) -> Result<GroupElement, GroupError> {
        if x.len() != self.source_rank {
            return Err(GroupError::Dimension { expected: self.source_rank, found: x.len() });
        }
        let coords = self
            .keep
            .iter()
            .map(|&j| x.iter().zip(&self.transform).map(|(xi, row)| xi * &row[j]).sum())
            .collect();
        Ok(self.target.reduce(coords))
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.apply_vector(&x.0)
    }

    pub fn image(&self, s: &Subgroup) -> Result<Subgroup, GroupError> {
        let gens = s.basis.iter().map(|r| self.apply_vector(r)).collect::<Result<Vec<_>, _>>()?;
        Subgroup::from_generators(&self.target, &gens)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .orders
            .iter()
            .zip(&self.names)
            .map(|(o, n)| if o.is_zero() { format!("Z·{}", n) } else { format!("Z/{}·{}", o, n) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

//! γ-filtration of a presented model.
//!
//! `F¹` is the augmentation kernel. For `k ≥ 2`, `F^k` is spanned by the
//! products `∏ γ^{iⱼ}(eⱼ)` of total weight `Σ iⱼ ≥ k`, where the `eⱼ` run
//! over a generating set of the kernel. Products are enumerated depth first
//! over multisets of factors, pruning as soon as a partial product is zero.

use num_bigint::BigInt;

use crate::abelian::{integer_kernel, relative_quotient_invariants, GroupElement, GroupPresentation, QuotientMap, Subgroup};
use crate::lambdaring::{ModelError, RingModel};

pub const DEFAULT_MAX_DEGREE: usize = 8;
pub const DEFAULT_WINDOW: usize = 2;
const NODE_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationResult {
    pub model: String,
    pub group: GroupPresentation,
    /// `F⁰ ⊇ F¹ ⊇ … ⊇ F^{kmax}`.
    pub pieces: Vec<Subgroup>,
    /// Invariant factors of `F^i/F^{i+1}` for `i < kmax`.
    pub graded: Vec<Vec<BigInt>>,
    /// Number of extra weight levels after `k` that contributed to `F^k`;
    /// `None` where the piece is exact.
    pub stabilized_window: Vec<Option<usize>>,
    pub exact: bool,
    /// Largest product weight enumerated.
    pub weight_cap: usize,
    pub warnings: Vec<String>,
}

impl FiltrationResult {
    pub fn kmax(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, k: usize) -> &Subgroup {
        &self.pieces[k]
    }

    pub fn generators(&self, k: usize) -> Vec<GroupElement> {
        self.pieces[k].generators(&self.group)
    }
}

/// The augmentation kernel together with the generating set used for the
/// γ-products.
pub fn augmentation_kernel(m: &RingModel) -> (Subgroup, Vec<GroupElement>) {
    let g = m.group();
    let row = vec![m.augmentation().to_vec()];
    let mut gens = Vec::new();
    for v in integer_kernel(&row, m.rank()) {
        let x = g.reduce(v);
        if !x.is_zero() && !gens.contains(&x) {
            gens.push(x);
        }
    }
    let sub = Subgroup::from_generators(g, &gens).expect("kernel vectors have model rank");
    (sub, gens)
}

struct Factor {
    weight: usize,
    value: GroupElement,
}

struct Enumeration {
    levels: Vec<Subgroup>,
    hit_cap: bool,
    exhausted_budget: bool,
}

fn enumerate(m: &RingModel, factors: &[Factor], cap: usize) -> Enumeration {
    let g = m.group();
    let mut levels = vec![Subgroup::zero(g); cap + 1];
    let mut hit_cap = false;
    let mut nodes = 0usize;
    let mut stack: Vec<(usize, usize, GroupElement)> = vec![(0, 0, m.unit().clone())];
    while let Some((start, weight, value)) = stack.pop() {
        for (j, f) in factors.iter().enumerate().skip(start) {
            nodes += 1;
            if nodes > NODE_BUDGET {
                return Enumeration { levels, hit_cap: true, exhausted_budget: true };
            }
            let p = m.multiply(&value, &f.value);
            if p.is_zero() {
                continue;
            }
            let w = weight + f.weight;
            if w > cap {
                hit_cap = true;
                continue;
            }
            levels[w].absorb(p.coeffs());
            stack.push((j, w, p));
        }
    }
    Enumeration { levels, hit_cap, exhausted_budget: false }
}

/// Computes `F⁰ … F^{kmax}` and the graded pieces.
pub fn gamma_filtration(m: &RingModel, kmax: usize, window: usize) -> Result<FiltrationResult, ModelError> {
    if kmax < 1 {
        return Err(ModelError::Degree(1));
    }
    if window < 1 {
        return Err(ModelError::Invalid("window must be at least 1".into()));
    }
    let g = m.group();
    let trunc = m.truncation();
    let (kernel, gens) = augmentation_kernel(m);

    let mut warnings = Vec::new();
    let mut polynomial_gammas = true;
    let mut factors = Vec::new();
    for e in &gens {
        // ±e generate the same subgroup; keep the sign with the shorter γ-series
        let plus = m.gamma_total(e, trunc)?;
        let minus = m.gamma_total(&m.group().neg(e), trunc)?;
        let (dp, dm) = (plus.degree(m).unwrap_or(0), minus.degree(m).unwrap_or(0));
        let (gamma, deg) = if dm < dp { (minus, dm) } else { (plus, dp) };
        if deg + 2 > trunc {
            polynomial_gammas = false;
            warnings.push(format!("γ-series of {} does not terminate below t^{}", m.format(e), trunc));
        }
        for i in 1..=trunc {
            let v = gamma.coeff(i);
            if !v.is_zero() {
                factors.push(Factor { weight: i, value: v.clone() });
            }
        }
    }

    let mut cap = kmax + window + 1;
    let max_cap = cap.max(4 * trunc);
    let mut run = enumerate(m, &factors, cap);
    while run.hit_cap && !run.exhausted_budget && cap < max_cap {
        cap = (2 * cap).min(max_cap);
        run = enumerate(m, &factors, cap);
    }
    if run.exhausted_budget {
        warnings.push(format!("product enumeration stopped after {} nodes", NODE_BUDGET));
    }
    let exact = !run.hit_cap && polynomial_gammas;

    let mut pieces = vec![Subgroup::zero(g); kmax + 1];
    let mut stabilized = vec![None; kmax + 1];
    let mut above = Subgroup::zero(g);
    for k in (2..=kmax).rev() {
        let mut acc = above.clone();
        if exact {
            for level in &run.levels[k.min(cap + 1)..] {
                acc = acc.sum(level)?;
            }
        } else {
            let mut idle = 0;
            let mut last_growth = 0;
            let mut w = k;
            while idle < window {
                if w > cap {
                    warnings.push(format!("F^{} did not stabilize below weight {}", k, cap));
                    break;
                }
                let next = acc.sum(&run.levels[w])?;
                if next == acc {
                    idle += 1;
                } else {
                    idle = 0;
                    last_growth = w - k;
                    acc = next;
                }
                w += 1;
            }
            stabilized[k] = Some(last_growth);
        }
        pieces[k] = acc.clone();
        above = acc;
    }
    pieces[1] = kernel;
    pieces[0] = Subgroup::whole(g);
    if !pieces[2.min(kmax)].is_subgroup_of(&pieces[1])? {
        return Err(ModelError::Invalid("γ-products leave the augmentation kernel".into()));
    }

    let mut result = FiltrationResult {
        model: m.name().to_string(),
        group: g.clone(),
        pieces,
        graded: Vec::new(),
        stabilized_window: stabilized,
        exact,
        weight_cap: cap,
        warnings,
    };
    result.graded = graded(&result)?;
    Ok(result)
}

/// Invariant factors of `F^i/F^{i+1}` for `0 ≤ i < kmax`.
pub fn graded(f: &FiltrationResult) -> Result<Vec<Vec<BigInt>>, ModelError> {
    let mut out = Vec::with_capacity(f.kmax());
    for i in 0..f.kmax() {
        out.push(relative_quotient_invariants(&f.pieces[i], &f.pieces[i + 1])?);
    }
    Ok(out)
}

/// Pushes each `F^k` into `A/⟨hyperbolic⟩`.
pub fn witt_filtration(m: &RingModel, f: &FiltrationResult) -> Result<FiltrationResult, ModelError> {
    let hyp = m.hyperbolic().ok_or(ModelError::MissingHyperbolic)?;
    let h = Subgroup::from_generators(m.group(), hyp)?;
    let q = QuotientMap::new(m.group(), &h, "w")?;
    let pieces = f.pieces.iter().map(|s| q.image(s)).collect::<Result<Vec<_>, _>>()?;
    let mut result = FiltrationResult {
        model: format!("W({})", f.model),
        group: q.target().clone(),
        pieces,
        graded: Vec::new(),
        stabilized_window: f.stabilized_window.clone(),
        exact: f.exact,
        weight_cap: f.weight_cap,
        warnings: f.warnings.clone(),
    };
    result.graded = graded(&result)?;
    Ok(result)
}

/// Checks `F^i·F^j ⊆ F^{i+j}` on generators for `i + j ≤ kmax`.
pub fn check_ideal_property(m: &RingModel, f: &FiltrationResult) -> Result<bool, ModelError> {
    let kmax = f.kmax();
    let gens: Vec<Vec<GroupElement>> = (0..=kmax).map(|k| f.generators(k)).collect();
    for i in 1..=kmax {
        for j in i..=kmax - i {
            for x in &gens[i] {
                for y in &gens[j] {
                    if !f.pieces[i + j].contains(&m.multiply(x, y))? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `true` when every `F^{k+1} ⊆ F^k`.
pub fn is_nested(f: &FiltrationResult) -> Result<bool, ModelError> {
    for k in 0..f.kmax() {
        if !f.pieces[k + 1].is_subgroup_of(&f.pieces[k])? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{quotient_invariants, subgroups_equal};
    use crate::lambdaring::MulEntry;
    use num_traits::{One, Zero};

    fn gw_r() -> RingModel {
        let g = GroupPresentation::new(vec!["1".into(), "L".into()], vec![BigInt::zero(), BigInt::zero()]).unwrap();
        let e = |v: &[i64]| g.element_i64(v).unwrap();
        RingModel::new(
            "gw_r",
            g.clone(),
            e(&[1, 0]),
            vec![
                MulEntry { i: 0, j: 0, product: e(&[1, 0]) },
                MulEntry { i: 0, j: 1, product: e(&[0, 1]) },
                MulEntry { i: 1, j: 1, product: e(&[1, 0]) },
            ],
            vec![BigInt::one(), BigInt::one()],
            vec![vec![e(&[1, 0])], vec![e(&[0, 1])]],
            Some(vec![e(&[1, 1])]),
            16,
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_real_point() {
        let m = gw_r();
        let (k, gens) = augmentation_kernel(&m);
        assert_eq!(gens.len(), 1);
        let eta = m.parse_element("L - 1").unwrap();
        assert!(k.contains(&eta).unwrap());
        assert_eq!(quotient_invariants(m.group(), &k).unwrap(), vec![BigInt::zero()]);
    }

    #[test]
    fn real_point_powers_of_two() {
        let m = gw_r();
        let f = gamma_filtration(&m, 6, 2).unwrap();
        assert!(!f.exact);
        let eta = m.parse_element("L - 1").unwrap();
        for k in 1..=6 {
            let expected = Subgroup::from_generators(m.group(), &[m.group().scale(&(BigInt::one() << (k - 1)), &eta)]).unwrap();
            assert!(subgroups_equal(&f.pieces[k], &expected).unwrap(), "F^{}", k);
        }
        assert_eq!(f.graded[0], vec![BigInt::zero()]);
        for k in 1..6 {
            assert_eq!(f.graded[k], vec![BigInt::from(2)]);
        }
        assert!(is_nested(&f).unwrap());
        assert!(check_ideal_property(&m, &f).unwrap());
    }

    #[test]
    fn witt_of_real_point() {
        let m = gw_r();
        let f = gamma_filtration(&m, 4, 2).unwrap();
        let w = witt_filtration(&m, &f).unwrap();
        assert_eq!(w.group.invariant_factors(), vec![BigInt::zero()]);
        for k in 0..4 {
            assert_eq!(w.graded[k], vec![BigInt::from(2)]);
        }
    }

    #[test]
    fn bad_arguments() {
        let m = gw_r();
        assert!(gamma_filtration(&m, 0, 2).is_err());
        assert!(gamma_filtration(&m, 3, 0).is_err());
    }
}

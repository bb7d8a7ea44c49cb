//! Multi-index combinatorics and the Fourier–Legendre polynomial basis.
//!
//! The basis is indexed by multi-indices α with |α| = Σ α_k bounded by a
//! maximal total degree, enumerated degree block by degree block. Inside a
//! block the first-degree indices appear in variable order, the second-degree
//! indices as the pairs ε^(k)+ε^(ℓ) with k ≤ ℓ in lexicographic (k, ℓ) order,
//! and higher blocks in graded reverse-lexicographic order. Position 0 is the
//! zero index, position k (1 ≤ k ≤ m) the first-degree index of variable k−1,
//! and the last position the index (0, …, 0, K).

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::HashMap;

/// A finitely supported sequence of non-negative integer exponents.
///
/// Stored sparsely as (variable, exponent) pairs with strictly increasing
/// variable positions and nonzero exponents; trailing zeros are implicit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex {
    terms: Vec<(u32, u32)>,
}

impl MultiIndex {
    /// The zero multi-index.
    pub fn zero() -> Self {
        MultiIndex { terms: Vec::new() }
    }

    /// Unit index ε in variable `var` (0-based).
    pub fn unit(var: usize) -> Self {
        MultiIndex {
            terms: vec![(var as u32, 1)],
        }
    }

    /// Build from a dense exponent slice, dropping zeros.
    pub fn from_dense(exponents: &[u32]) -> Self {
        MultiIndex {
            terms: exponents
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| (k as u32, e))
                .collect(),
        }
    }

    fn from_terms(mut terms: Vec<(u32, u32)>) -> Self {
        terms.retain(|&(_, e)| e > 0);
        terms.sort_unstable_by_key(|&(k, _)| k);
        MultiIndex { terms }
    }

    /// Total degree |α| = Σ α_k.
    pub fn order(&self) -> u32 {
        self.terms.iter().map(|&(_, e)| e).sum()
    }

    /// Exponent of variable `var` (0-based); zero outside the support.
    pub fn exponent(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .find(|&&(k, _)| k as usize == var)
            .map_or(0, |&(_, e)| e)
    }

    /// Nonzero (variable, exponent) pairs in increasing variable order.
    pub fn support(&self) -> &[(u32, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest variable with a nonzero exponent, if any (0-based).
    pub fn max_variable(&self) -> Option<usize> {
        self.terms.last().map(|&(k, _)| k as usize)
    }

    /// Dense exponent vector of length `m`.
    pub fn to_dense(&self, m: usize) -> Vec<u32> {
        let mut out = vec![0u32; m];
        for &(k, e) in &self.terms {
            out[k as usize] = e;
        }
        out
    }

    /// Sum of two multi-indices (componentwise).
    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        let mut terms = self.terms.clone();
        for &(k, e) in &other.terms {
            match terms.binary_search_by_key(&k, |&(p, _)| p) {
                Ok(i) => terms[i].1 += e,
                Err(i) => terms.insert(i, (k, e)),
            }
        }
        MultiIndex { terms }
    }

    /// Graded reverse-lexicographic comparison, descending within a degree
    /// block: lower total degree first; for equal degrees the index with the
    /// smaller exponent at the highest differing variable comes first.
    pub fn cmp_grevlex(&self, other: &Self) -> Ordering {
        match self.order().cmp(&other.order()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.terms.iter().rev().peekable();
        let mut b = other.terms.iter().rev().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&&(ka, ea)), Some(&&(kb, eb))) => match ka.cmp(&kb) {
                    // a has support at a higher variable than b: at that
                    // variable a's exponent exceeds b's zero, so a sorts last
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Less => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                    },
                },
            }
        }
    }
}

/// Legendre polynomial p_n(x) by the three-term recursion
/// (n+1) p_{n+1} = (2n+1) x p_n − n p_{n−1}.
///
/// Stable on [−1, 1]; arguments outside that interval are evaluated as-is
/// (extrapolation).
pub fn legendre_eval<T: Scalar>(n: usize, x: T) -> T {
    legendre_eval_pair(n, x).0
}

/// Returns (p_n(x), p_{n−1}(x)); the second component is zero for n = 0.
fn legendre_eval_pair<T: Scalar>(n: usize, x: T) -> (T, T) {
    if n == 0 {
        return (T::one(), T::zero());
    }
    let mut prev = T::one();
    let mut cur = x;
    for k in 1..n {
        let kf = T::of_usize(k);
        let next = ((T::of(2.0) * kf + T::one()) * x * cur - kf * prev) / (kf + T::one());
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Derivative p_n'(x) from p_n and p_{n−1}; valid for |x| ≠ 1.
fn legendre_derivative<T: Scalar>(n: usize, x: T, pn: T, pnm1: T) -> T {
    let nf = T::of_usize(n);
    nf * (x * pn - pnm1) / (x * x - T::one())
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
///
/// Nodes are the roots of p_n found by Newton iteration from the Chebyshev
/// initial guess; weights are 2 / ((1 − x²) p_n'(x)²).
pub fn gauss_legendre<T: Scalar>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n > 0, "quadrature rule needs at least one node");
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let tol = T::epsilon() * T::of(4.0);
    for i in 0..n.div_ceil(2) {
        let theta = T::PI() * (T::of_usize(i) + T::of(0.75)) / (T::of_usize(n) + T::of(0.5));
        let mut x = theta.cos();
        for _ in 0..100 {
            let (pn, pnm1) = legendre_eval_pair(n, x);
            let dp = legendre_derivative(n, x, pn, pnm1);
            let dx = pn / dp;
            x = x - dx;
            if dx.abs() <= tol {
                break;
            }
        }
        let (pn, pnm1) = legendre_eval_pair(n, x);
        let dp = legendre_derivative(n, x, pn, pnm1);
        let w = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x.abs();
        nodes[n - 1 - i] = x.abs();
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    (nodes, weights)
}

/// Product Fourier–Legendre polynomial L_α(ξ) = Π p_{α_i}(ξ_i).
///
/// `xi` must cover the support of α.
pub fn fourier_legendre_eval<T: Scalar>(alpha: &MultiIndex, xi: &[T]) -> Result<T> {
    if let Some(max_var) = alpha.max_variable() {
        if max_var >= xi.len() {
            return Err(Error::DimensionMismatch {
                expected: max_var + 1,
                got: xi.len(),
                context: "fourier_legendre_eval sample vector",
            });
        }
    }
    let mut value = T::one();
    for &(k, e) in alpha.support() {
        value = value * legendre_eval(e as usize, xi[k as usize]);
    }
    Ok(value)
}

/// Second moment E L_α² = Π_k 1/(2 α_k + 1).
pub fn second_moment<T: Scalar>(alpha: &MultiIndex) -> T {
    match second_moment_denominator(alpha) {
        Some(den) => T::one() / T::of(den as f64),
        // unreachable for any basis this crate can enumerate
        None => alpha
            .support()
            .iter()
            .map(|&(_, e)| T::one() / (T::of(2.0) * T::of(e as f64) + T::one()))
            .product(),
    }
}

/// Exact denominator of E L_α² (the moment is 1/den), unless it overflows.
pub fn second_moment_denominator(alpha: &MultiIndex) -> Option<u128> {
    let mut den: u128 = 1;
    for &(_, e) in alpha.support() {
        den = den.checked_mul(2 * e as u128 + 1)?;
    }
    Some(den)
}

/// Number of multi-indices in m variables with total degree ≤ `max_degree`,
/// i.e. (m + K)! / (m! K!), with overflow checking.
pub fn cardinality(m: usize, max_degree: usize) -> Result<usize> {
    let overflow = || Error::BasisOverflow { m, max_degree };
    let mut p: usize = 1;
    // running product of (m + i) / i stays integral at each step
    for i in 1..=max_degree {
        p = p.checked_mul(m.checked_add(i).ok_or_else(overflow)?).ok_or_else(overflow)? / i;
    }
    Ok(p)
}

/// Ordered truncated Fourier–Legendre basis over `m` variables with total
/// degree at most `max_degree`.
#[derive(Clone, Debug)]
pub struct ChaosBasis {
    m: usize,
    max_degree: usize,
    indices: Vec<MultiIndex>,
    positions: HashMap<MultiIndex, usize>,
    moment_dens: Vec<u128>,
}

impl ChaosBasis {
    /// Enumerate the basis. Requires m ≥ 1.
    pub fn build(m: usize, max_degree: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidConfig(
                "chaos basis needs at least one variable (m >= 1)".into(),
            ));
        }
        let p_total = cardinality(m, max_degree)?;
        let mut indices = Vec::with_capacity(p_total);
        indices.push(MultiIndex::zero());
        if max_degree >= 1 {
            for k in 0..m {
                indices.push(MultiIndex::unit(k));
            }
        }
        if max_degree >= 2 {
            for k in 0..m {
                for l in k..m {
                    indices.push(MultiIndex::unit(k).plus(&MultiIndex::unit(l)));
                }
            }
        }
        for degree in 3..=max_degree {
            let mut block = Vec::new();
            compositions_into(m, degree as u32, &mut Vec::new(), &mut block);
            block.sort_unstable_by(|a, b| a.cmp_grevlex(b));
            indices.extend(block);
        }
        debug_assert_eq!(indices.len(), p_total);
        let positions = indices
            .iter()
            .cloned()
            .enumerate()
            .map(|(p, alpha)| (alpha, p))
            .collect();
        let moment_dens = indices
            .iter()
            .map(|alpha| {
                second_moment_denominator(alpha).ok_or(Error::BasisOverflow { m, max_degree })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChaosBasis {
            m,
            max_degree,
            indices,
            positions,
            moment_dens,
        })
    }

    /// Number of random variables m.
    pub fn variable_count(&self) -> usize {
        self.m
    }

    /// Highest total degree K.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Basis cardinality P.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All indices in enumeration order.
    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    /// The multi-index at enumeration position p.
    pub fn index(&self, p: usize) -> &MultiIndex {
        &self.indices[p]
    }

    /// Inverse of the enumeration: position of α, if α belongs to the basis.
    pub fn position(&self, alpha: &MultiIndex) -> Option<usize> {
        self.positions.get(alpha).copied()
    }

    /// E L_α² for the index at position p.
    pub fn second_moment<T: Scalar>(&self, p: usize) -> T {
        T::one() / T::of(self.moment_dens[p] as f64)
    }

    /// Exact denominator of E L_α² at position p.
    pub fn second_moment_denominator(&self, p: usize) -> u128 {
        self.moment_dens[p]
    }

    /// Evaluate the basis polynomial at position p on a sample ξ.
    pub fn eval<T: Scalar>(&self, p: usize, xi: &[T]) -> Result<T> {
        fourier_legendre_eval(&self.indices[p], xi)
    }
}

/// All dense exponent vectors over `m` variables summing to `remaining`,
/// emitted as sparse multi-indices.
fn compositions_into(
    m: usize,
    remaining: u32,
    prefix: &mut Vec<(u32, u32)>,
    out: &mut Vec<MultiIndex>,
) {
    if m == 1 {
        let mut terms = prefix.clone();
        let var = terms.last().map_or(0, |&(k, _)| k + 1);
        if remaining > 0 {
            terms.push((var, remaining));
        }
        out.push(MultiIndex::from_terms(terms));
        return;
    }
    let var = prefix.last().map_or(0, |&(k, _)| k + 1);
    for e in 0..=remaining {
        if e > 0 {
            prefix.push((var, e));
        }
        compositions_into(m - 1, remaining - e, prefix, out);
        if e > 0 {
            prefix.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn legendre_low_degrees() {
        assert_eq!(legendre_eval::<f64>(0, 0.7), 1.0);
        assert_eq!(legendre_eval::<f64>(1, -0.3), -0.3);
        assert_eq!(legendre_eval::<f64>(2, 0.5), -0.125);
    }

    #[test]
    fn legendre_endpoint_values() {
        // p_n(1) = 1 and p_n(-1) = (-1)^n for all n
        for n in 0..20 {
            assert!((legendre_eval::<f64>(n, 1.0) - 1.0).abs() < 1e-13);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((legendre_eval::<f64>(n, -1.0) - sign).abs() < 1e-13);
        }
    }

    #[test]
    fn gauss_legendre_orthogonality() {
        // (m+n)/2+1 points integrate p_m p_n exactly: 2/(2n+1) delta_mn
        for m in 0..=8usize {
            for n in 0..=8usize {
                let npts = (m + n) / 2 + 1;
                let (x, w) = gauss_legendre::<f64>(npts);
                let integral: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(&xi, &wi)| wi * legendre_eval(m, xi) * legendre_eval(n, xi))
                    .sum();
                let exact = if m == n { 2.0 / (2.0 * n as f64 + 1.0) } else { 0.0 };
                assert!(
                    (integral - exact).abs() < 1e-12,
                    "m={m} n={n}: {integral} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn second_moment_examples() {
        assert_eq!(second_moment::<f64>(&MultiIndex::zero()), 1.0);
        assert_eq!(second_moment::<f64>(&MultiIndex::unit(0)), 1.0 / 3.0);
        assert_eq!(
            second_moment::<f64>(&MultiIndex::from_dense(&[2, 1])),
            1.0 / 15.0
        );
    }

    #[test]
    fn fourier_legendre_examples() {
        let xi = [0.1, 0.4];
        assert_eq!(
            fourier_legendre_eval::<f64>(&MultiIndex::zero(), &xi).unwrap(),
            1.0
        );
        assert_eq!(
            fourier_legendre_eval::<f64>(&MultiIndex::unit(1), &xi).unwrap(),
            0.4
        );
        let a = MultiIndex::from_dense(&[1, 1]);
        let v = fourier_legendre_eval::<f64>(&a, &[0.5, -0.2]).unwrap();
        assert!((v - (-0.1)).abs() < 1e-15);
    }

    #[test]
    fn fourier_legendre_dimension_error() {
        let a = MultiIndex::from_dense(&[0, 0, 2]);
        assert!(fourier_legendre_eval::<f64>(&a, &[0.1, 0.2]).is_err());
    }

    #[test]
    fn cardinality_matches_enumeration() {
        for m in 1..=6 {
            for k in 0..=6 {
                let basis = ChaosBasis::build(m, k).unwrap();
                assert_eq!(basis.len(), cardinality(m, k).unwrap(), "m={m} K={k}");
            }
        }
    }

    #[test]
    fn cardinality_overflow_detected() {
        assert!(cardinality(usize::MAX / 2, 4).is_err());
    }

    #[test]
    fn enumeration_explicit_positions() {
        let basis = ChaosBasis::build(2, 2).unwrap();
        assert_eq!(basis.len(), 6);
        let dense: Vec<Vec<u32>> = basis.indices().iter().map(|a| a.to_dense(2)).collect();
        assert_eq!(
            dense,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
    }

    #[test]
    fn enumeration_unit_indices_lead() {
        let basis = ChaosBasis::build(120, 3).unwrap();
        assert!(basis.index(0).is_zero());
        for k in 1..=120usize {
            assert_eq!(*basis.index(k), MultiIndex::unit(k - 1));
        }
        // first second-degree entries follow the published pattern
        assert_eq!(*basis.index(121), MultiIndex::from_dense(&[2]));
        assert_eq!(*basis.index(122), MultiIndex::from_dense(&[1, 1]));
    }

    #[test]
    fn enumeration_degree_two_formula() {
        // position of eps^(k) + eps^(l) is m + (m-1) + ... + (m-k+1) + l
        // for 1 <= k <= l <= m (1-based variables)
        for m in [3usize, 5, 8] {
            let basis = ChaosBasis::build(m, 2).unwrap();
            for k in 1..=m {
                for l in k..=m {
                    let alpha = MultiIndex::unit(k - 1).plus(&MultiIndex::unit(l - 1));
                    // the leading sum m + (m-1) + ... + (m-k+1) has k terms
                    let expected: usize = (0..k).map(|j| m - j).sum::<usize>() + l;
                    assert_eq!(basis.position(&alpha), Some(expected), "m={m} k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn enumeration_last_index() {
        for (m, k) in [(1usize, 3usize), (3, 4), (5, 3)] {
            let basis = ChaosBasis::build(m, k).unwrap();
            let mut dense = vec![0u32; m];
            dense[m - 1] = k as u32;
            assert_eq!(
                basis.position(&MultiIndex::from_dense(&dense)),
                Some(basis.len() - 1)
            );
        }
    }

    #[test]
    fn enumeration_bijective() {
        for (m, k) in [(3usize, 4usize), (5, 3), (2, 6)] {
            let basis = ChaosBasis::build(m, k).unwrap();
            for p in 0..basis.len() {
                assert_eq!(basis.position(basis.index(p)), Some(p));
            }
        }
    }

    #[test]
    fn grevlex_block_order_degree_three() {
        let basis = ChaosBasis::build(3, 3).unwrap();
        let deg3: Vec<Vec<u32>> = basis
            .indices()
            .iter()
            .filter(|a| a.order() == 3)
            .map(|a| a.to_dense(3))
            .collect();
        assert_eq!(
            deg3,
            vec![
                vec![3, 0, 0],
                vec![2, 1, 0],
                vec![1, 2, 0],
                vec![0, 3, 0],
                vec![2, 0, 1],
                vec![1, 1, 1],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![0, 1, 2],
                vec![0, 0, 3]
            ]
        );
    }

    proptest! {
        #[test]
        fn enumeration_round_trips(m in 1usize..6, k in 0usize..6) {
            let basis = ChaosBasis::build(m, k).unwrap();
            for p in 0..basis.len() {
                prop_assert_eq!(basis.position(basis.index(p)), Some(p));
                prop_assert!(basis.index(p).order() as usize <= k);
            }
        }

        #[test]
        fn blocks_are_degree_sorted(m in 1usize..6, k in 0usize..6) {
            let basis = ChaosBasis::build(m, k).unwrap();
            let orders: Vec<u32> = basis.indices().iter().map(|a| a.order()).collect();
            prop_assert!(orders.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

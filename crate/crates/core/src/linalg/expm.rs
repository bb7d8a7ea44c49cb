//! Dense matrix exponential by Padé approximation with scaling and squaring
//! (Higham 2005), and the φ₁ block evaluation built on top of it.

use super::dense::DenseMatrix;
use crate::error::Result;
use crate::scalar::Scalar;

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Evaluate exp(A) for a square dense matrix.
pub fn expm<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    let norm = a.one_norm().to_f64().unwrap_or(f64::INFINITY);

    let (u, mut v, squarings) = if norm <= THETA_13 {
        let (u, v) = pade_low(a, norm);
        (u, v, 0u32)
    } else {
        let squarings = ((norm / THETA_13).log2().ceil()).max(0.0) as u32;
        let mut scaled = a.clone();
        scaled.scale(T::one() / T::of(2.0f64.powi(squarings as i32)));
        let a2 = scaled.matmul(&scaled);
        let a4 = a2.matmul(&a2);
        let a6 = a4.matmul(&a2);
        let (u, v) = pade13(&scaled, &a2, &a4, &a6);
        (u, v, squarings)
    };

    // r = (V - U)^{-1} (V + U)
    let mut numer = DenseMatrix::zeros(n, n);
    numer.add_scaled(T::one(), &v);
    numer.add_scaled(T::one(), &u);
    v.add_scaled(-T::one(), &u);
    v.lu_solve_in_place(&mut numer)?;
    let mut r = numer;
    for _ in 0..squarings {
        r = r.matmul(&r);
    }
    Ok(r)
}

fn pade_low<T: Scalar>(a: &DenseMatrix<T>, norm: f64) -> (DenseMatrix<T>, DenseMatrix<T>) {
    let a2 = a.matmul(a);
    if norm <= THETA_3 {
        return pade_poly(a, &[a2], &B3);
    }
    let a4 = a2.matmul(&a2);
    if norm <= THETA_5 {
        return pade_poly(a, &[a2, a4], &B5);
    }
    let a6 = a4.matmul(&a2);
    if norm <= THETA_7 {
        return pade_poly(a, &[a2, a4, a6], &B7);
    }
    let a8 = a6.matmul(&a2);
    if norm <= THETA_9 {
        return pade_poly(a, &[a2, a4, a6, a8], &B9);
    }
    pade13(a, &a2, &a4, &a6)
}

/// U = A · (Σ b_{2k+1} A^{2k}), V = Σ b_{2k} A^{2k} for the low-order tables.
fn pade_poly<T: Scalar>(
    a: &DenseMatrix<T>,
    powers: &[DenseMatrix<T>],
    b: &[f64],
) -> (DenseMatrix<T>, DenseMatrix<T>) {
    let n = a.rows();
    let ident = DenseMatrix::identity(n);
    let mut odd = DenseMatrix::zeros(n, n);
    odd.add_scaled(T::of(b[1]), &ident);
    let mut even = DenseMatrix::zeros(n, n);
    even.add_scaled(T::of(b[0]), &ident);
    for (k, p) in powers.iter().enumerate() {
        odd.add_scaled(T::of(b[2 * k + 3]), p);
        even.add_scaled(T::of(b[2 * k + 2]), p);
    }
    (a.matmul(&odd), even)
}

fn pade13<T: Scalar>(
    a: &DenseMatrix<T>,
    a2: &DenseMatrix<T>,
    a4: &DenseMatrix<T>,
    a6: &DenseMatrix<T>,
) -> (DenseMatrix<T>, DenseMatrix<T>) {
    let n = a.rows();
    let ident = DenseMatrix::identity(n);
    let mut w1 = DenseMatrix::zeros(n, n);
    w1.add_scaled(T::of(B13[13]), a6);
    w1.add_scaled(T::of(B13[11]), a4);
    w1.add_scaled(T::of(B13[9]), a2);
    let mut w = a6.matmul(&w1);
    w.add_scaled(T::of(B13[7]), a6);
    w.add_scaled(T::of(B13[5]), a4);
    w.add_scaled(T::of(B13[3]), a2);
    w.add_scaled(T::of(B13[1]), &ident);
    let u = a.matmul(&w);
    let mut z1 = DenseMatrix::zeros(n, n);
    z1.add_scaled(T::of(B13[12]), a6);
    z1.add_scaled(T::of(B13[10]), a4);
    z1.add_scaled(T::of(B13[8]), a2);
    let mut v = a6.matmul(&z1);
    v.add_scaled(T::of(B13[6]), a6);
    v.add_scaled(T::of(B13[4]), a4);
    v.add_scaled(T::of(B13[2]), a2);
    v.add_scaled(T::of(B13[0]), &ident);
    (u, v)
}

/// Evaluate exp(M) and φ₁(M)·G together, where φ₁(z) = (exp(z) − 1)/z,
/// via the augmented block matrix
///
/// ```text
/// exp [ M  G ]  =  [ exp(M)  φ₁(M)·G ]
///     [ 0  0 ]     [   0        I    ]
/// ```
///
/// which avoids the cancellation in (exp(z) − 1)/z for small eigenvalues.
/// Returns (exp(M), φ₁(M)·G).
pub fn phi1_combination<T: Scalar>(
    m: &DenseMatrix<T>,
    g: &DenseMatrix<T>,
) -> Result<(DenseMatrix<T>, DenseMatrix<T>)> {
    assert_eq!(m.rows(), m.cols());
    assert_eq!(g.rows(), m.rows());
    let n = m.rows();
    let k = g.cols();
    let mut aug = DenseMatrix::zeros(n + k, n + k);
    for i in 0..n {
        aug.row_mut(i)[..n].copy_from_slice(m.row(i));
        aug.row_mut(i)[n..].copy_from_slice(g.row(i));
    }
    let e = expm(&aug)?;
    let mut exp_m = DenseMatrix::zeros(n, n);
    let mut phi_g = DenseMatrix::zeros(n, k);
    for i in 0..n {
        exp_m.row_mut(i).copy_from_slice(&e.row(i)[..n]);
        phi_g.row_mut(i).copy_from_slice(&e.row(i)[n..]);
    }
    Ok((exp_m, phi_g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_diagonal_exponential() {
        let n = 4;
        let mut a = DenseMatrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = -(i as f64) * 1.3 + 0.2;
        }
        let e = expm(&a).unwrap();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { a[(i, i)].exp() } else { 0.0 };
                assert!((e[(i, j)] - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn matches_rotation_exponential() {
        // exp of [[0, -t], [t, 0]] is the rotation by angle t
        let t = 1.234_f64;
        let mut a = DenseMatrix::zeros(2, 2);
        a[(0, 1)] = -t;
        a[(1, 0)] = t;
        let e = expm(&a).unwrap();
        assert!((e[(0, 0)] - t.cos()).abs() < 1e-14);
        assert!((e[(0, 1)] + t.sin()).abs() < 1e-14);
        assert!((e[(1, 0)] - t.sin()).abs() < 1e-14);
        assert!((e[(1, 1)] - t.cos()).abs() < 1e-14);
    }

    #[test]
    fn scaling_and_squaring_pathway() {
        // stiff diagonal forces several squarings
        let n = 3;
        let mut a = DenseMatrix::zeros(n, n);
        a[(0, 0)] = -200.0;
        a[(1, 1)] = -40.0;
        a[(2, 2)] = -1.0;
        let e = expm(&a).unwrap();
        for i in 0..n {
            let want = a[(i, i)].exp();
            let rel = (e[(i, i)] - want).abs() / want.max(1e-300);
            assert!(rel < 1e-12, "i={i} rel={rel}");
        }
    }

    #[test]
    fn phi1_scalar_identity() {
        // for 1x1: phi1(z) = (e^z - 1)/z
        for &z in &[-3.0_f64, -1e-8, 0.5, 2.0] {
            let mut m = DenseMatrix::zeros(1, 1);
            m[(0, 0)] = z;
            let mut g = DenseMatrix::zeros(1, 1);
            g[(0, 0)] = 1.0;
            let (_, phi) = phi1_combination(&m, &g).unwrap();
            let want = if z.abs() < 1e-6 {
                1.0 + z / 2.0 + z * z / 6.0
            } else {
                (z.exp() - 1.0) / z
            };
            assert!((phi[(0, 0)] - want).abs() < 1e-12, "z={z}");
        }
    }
}

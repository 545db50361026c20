//! Polynomials over `F_p` and the Frobenius (rational canonical) normal form
//! of a square matrix, via the Smith form of `xI − T` over `F_p[x]`.

use crate::linalg::{Fp, Mat};

/// Coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<u32>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: u32) -> Self {
        Poly(vec![c]).trimmed()
    }

    pub fn from_coeffs(c: Vec<u32>) -> Self {
        Poly(c).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    fn lead(&self) -> u32 {
        *self.0.last().expect("nonzero polynomial")
    }

    pub fn add(&self, o: &Poly, f: Fp) -> Poly {
        let n = self.0.len().max(o.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).copied().unwrap_or(0);
        Poly((0..n).map(|i| f.add(get(self, i), get(o, i))).collect()).trimmed()
    }

    pub fn scale(&self, c: u32, f: Fp) -> Poly {
        Poly(self.0.iter().map(|&x| f.mul(x, c)).collect()).trimmed()
    }

    pub fn sub(&self, o: &Poly, f: Fp) -> Poly {
        self.add(&o.scale(f.neg(1), f), f)
    }

    pub fn mul(&self, o: &Poly, f: Fp) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly(out).trimmed()
    }

    /// `(q, r)` with `self = q·d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly, f: Fp) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.lead());
        let mut r = self.0.clone();
        let mut q = vec![0; self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = f.mul(*r.last().unwrap(), inv);
            q[k] = c;
            for (i, &b) in d.0.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, b));
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Poly(q).trimmed(), Poly(r).trimmed())
    }

    pub fn monic(&self, f: Fp) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.lead()), f)
    }
}

/// Monic invariant factors of `T` of positive degree, each dividing the
/// next.
pub fn invariant_factors(t: &Mat, f: Fp) -> Vec<Poly> {
    let n = t.rows();
    assert_eq!(n, t.cols(), "invariant factors of a non-square matrix");
    let mut m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut c = vec![f.neg(t.get(i, j))];
                    if i == j {
                        c.push(1);
                    }
                    Poly::from_coeffs(c)
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        loop {
            // Pivot: an entry of least degree in the trailing block.
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if let Some(d) = m[i][j].degree() {
                        if best.map_or(true, |(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break;
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..n {
                let (q, r) = m[i][k].div_rem(&m[k][k], f);
                for j in k..n {
                    let v = m[i][j].sub(&q.mul(&m[k][j], f), f);
                    m[i][j] = v;
                }
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                let (q, r) = m[k][j].div_rem(&m[k][k], f);
                for i in k..n {
                    let v = m[i][j].sub(&q.mul(&m[i][k], f), f);
                    m[i][j] = v;
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row.
            let offender = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].div_rem(&m[k][k], f).1.is_zero());
            match offender {
                Some((i, _)) => {
                    for j in k..n {
                        let v = m[k][j].add(&m[i][j], f);
                        m[k][j] = v;
                    }
                }
                None => break,
            }
        }
    }
    (0..n)
        .map(|k| m[k][k].monic(f))
        .filter(|p| p.degree().is_some_and(|d| d > 0))
        .collect()
}

/// Companion matrix of a monic polynomial.
pub fn companion(p: &Poly, f: Fp) -> Mat {
    let d = p.degree().expect("nonzero polynomial");
    let mut m = Mat::zeros(d, d);
    for i in 1..d {
        m.set(i, i - 1, 1);
    }
    for i in 0..d {
        m.set(i, d - 1, f.neg(p.coeffs()[i]));
    }
    m
}

/// Direct sum of the companion matrices of the invariant factors; two
/// matrices are conjugate exactly when their normal forms are equal.
pub fn frobenius_form(t: &Mat, f: Fp) -> Mat {
    invariant_factors(t, f)
        .iter()
        .fold(Mat::zeros(0, 0), |acc, p| acc.direct_sum(&companion(p, f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(n: usize, v: &[u32]) -> Mat {
        Mat::from_rows(n, n, v.to_vec())
    }

    #[test]
    fn division() {
        let f = Fp::new(5);
        let a = Poly::from_coeffs(vec![1, 0, 1]);
        let b = Poly::from_coeffs(vec![1, 1]);
        let (q, r) = a.div_rem(&b, f);
        assert_eq!(q.mul(&b, f).add(&r, f), a);
        assert!(r.degree().map_or(true, |d| d < 1));
    }

    #[test]
    fn conjugates_share_a_form() {
        let f = Fp::new(3);
        let t = mat(3, &[1, 1, 0, 0, 1, 0, 0, 0, 2]);
        let s = mat(3, &[1, 1, 1, 0, 1, 2, 1, 0, 0]);
        let s_inv = s.inverse(f).unwrap();
        let u = s.mul(&t, f).mul(&s_inv, f);
        assert_eq!(frobenius_form(&t, f), frobenius_form(&u, f));
        assert_ne!(frobenius_form(&t, f), frobenius_form(&Mat::identity(3), f));
    }

    #[test]
    fn identity_form() {
        let f = Fp::new(2);
        assert_eq!(frobenius_form(&Mat::identity(2), f), Mat::identity(2));
        let facs = invariant_factors(&Mat::identity(2), f);
        assert_eq!(facs, vec![Poly::from_coeffs(vec![1, 1]); 2]);
    }

    #[test]
    fn companion_has_its_characteristic_polynomial() {
        let f = Fp::new(7);
        let p = Poly::from_coeffs(vec![3, 0, 1]);
        let c = companion(&p, f);
        assert_eq!(invariant_factors(&c, f), vec![p]);
    }
}

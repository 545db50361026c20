//! Exhaustive solver for the bilinear systems behind interleaving
//! certificates.
//!
//! Unknowns split into an `f` side and a `g` side and every term is a
//! product of one unknown from each side, so fixing one side leaves a linear
//! system in the other. Each connected component is solved separately by
//! enumerating all assignments of its smaller side over `F_p`.

use crate::error::{Error, Result};
use crate::linalg::{Fp, Mat};

/// `Σ coef · f[u] · g[v] = rhs`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Equation {
    pub terms: Vec<(usize, usize, u32)>,
    pub rhs: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearSystem {
    pub characteristic: u32,
    pub f_count: usize,
    pub g_count: usize,
    pub equations: Vec<Equation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Feasible { f: Vec<u32>, g: Vec<u32> },
    Infeasible,
}

impl BilinearSystem {
    pub fn unknowns(&self) -> usize {
        self.f_count + self.g_count
    }

    /// Whether the assignment satisfies every equation.
    pub fn satisfied_by(&self, f: &[u32], g: &[u32]) -> bool {
        let fp = Fp::new(self.characteristic);
        self.equations.iter().all(|e| {
            let lhs = e
                .terms
                .iter()
                .fold(0, |acc, &(u, v, c)| fp.add(acc, fp.mul(c, fp.mul(f[u], g[v]))));
            lhs == e.rhs % self.characteristic
        })
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Solve the system, or prove it has no solution over `F_p`. Fails with a
/// capacity error when the number of unknowns exceeds `cap`.
pub fn solve(sys: &BilinearSystem, cap: usize) -> Result<Outcome> {
    if sys.unknowns() > cap {
        return Err(Error::Capacity {
            needed: sys.unknowns(),
            cap,
        });
    }
    let fp = Fp::new(sys.characteristic);
    let nf = sys.f_count;
    let mut parent: Vec<usize> = (0..sys.unknowns()).collect();
    for e in &sys.equations {
        if e.terms.is_empty() && e.rhs % sys.characteristic != 0 {
            return Ok(Outcome::Infeasible);
        }
        // All unknowns of one equation share a component.
        let Some(&(u0, _, _)) = e.terms.first() else {
            continue;
        };
        for &(u, v, _) in &e.terms {
            for w in [u, nf + v] {
                let (a, b) = (find(&mut parent, w), find(&mut parent, u0));
                parent[a] = b;
            }
        }
    }
    let mut f = vec![0; nf];
    let mut g = vec![0; sys.g_count];
    let mut by_root: std::collections::BTreeMap<usize, Vec<&Equation>> = Default::default();
    for e in sys.equations.iter().filter(|e| !e.terms.is_empty()) {
        let (u, _, _) = e.terms[0];
        by_root.entry(find(&mut parent, u)).or_default().push(e);
    }
    for (root, eqs) in by_root {
        let fs: Vec<usize> = (0..nf).filter(|&u| find(&mut parent, u) == root).collect();
        let gs: Vec<usize> = (0..sys.g_count)
            .filter(|&v| find(&mut parent, nf + v) == root)
            .collect();
        match solve_component(fp, &eqs, &fs, &gs) {
            Some((fv, gv)) => {
                for (k, &u) in fs.iter().enumerate() {
                    f[u] = fv[k];
                }
                for (k, &v) in gs.iter().enumerate() {
                    g[v] = gv[k];
                }
            }
            None => return Ok(Outcome::Infeasible),
        }
    }
    debug_assert!(sys.satisfied_by(&f, &g));
    Ok(Outcome::Feasible { f, g })
}

/// Enumerate the smaller side, solve linearly for the other.
fn solve_component(
    fp: Fp,
    eqs: &[&Equation],
    fs: &[usize],
    gs: &[usize],
) -> Option<(Vec<u32>, Vec<u32>)> {
    let enumerate_f = fs.len() <= gs.len();
    let (xs, ys) = if enumerate_f { (fs, gs) } else { (gs, fs) };
    let x_index = |u: usize| xs.binary_search(&u).expect("variable in component");
    let y_index = |v: usize| ys.binary_search(&v).expect("variable in component");
    let rhs: Vec<u32> = eqs.iter().map(|e| e.rhs % fp.p()).collect();
    let mut x = vec![0u32; xs.len()];
    loop {
        let mut m = Mat::zeros(eqs.len(), ys.len());
        for (r, e) in eqs.iter().enumerate() {
            for &(u, v, c) in &e.terms {
                let (xu, yv) = if enumerate_f { (u, v) } else { (v, u) };
                let w = fp.mul(c, x[x_index(xu)]);
                if w != 0 {
                    let col = y_index(yv);
                    m.set(r, col, fp.add(m.get(r, col), w));
                }
            }
        }
        let sol = if ys.is_empty() {
            rhs.iter().all(|&b| b == 0).then(Vec::new)
        } else {
            m.solve(&rhs, fp)
        };
        if let Some(y) = sol {
            return Some(if enumerate_f { (x, y) } else { (y, x) });
        }
        // Next assignment in lexicographic order.
        let mut k = 0;
        loop {
            if k == x.len() {
                return None;
            }
            x[k] += 1;
            if x[k] < fp.p() {
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(terms: &[(usize, usize, u32)], rhs: u32) -> Equation {
        Equation {
            terms: terms.to_vec(),
            rhs,
        }
    }

    #[test]
    fn single_product() {
        let sys = BilinearSystem {
            characteristic: 3,
            f_count: 1,
            g_count: 1,
            equations: vec![eq(&[(0, 0, 1)], 2)],
        };
        match solve(&sys, 24).unwrap() {
            Outcome::Feasible { f, g } => assert!(sys.satisfied_by(&f, &g)),
            Outcome::Infeasible => panic!("2 = f·g is solvable"),
        }
    }

    #[test]
    fn contradictory_products() {
        // f·g = 1 and f·g = 0 cannot both hold.
        let sys = BilinearSystem {
            characteristic: 2,
            f_count: 1,
            g_count: 1,
            equations: vec![eq(&[(0, 0, 1)], 1), eq(&[(0, 0, 1)], 0)],
        };
        assert_eq!(solve(&sys, 24).unwrap(), Outcome::Infeasible);
        let empty = BilinearSystem {
            characteristic: 2,
            f_count: 0,
            g_count: 0,
            equations: vec![eq(&[], 1)],
        };
        assert_eq!(solve(&empty, 24).unwrap(), Outcome::Infeasible);
    }

    #[test]
    fn rank_one_obstruction() {
        // [f0 g0, f0 g1; f1 g0, f1 g1] = identity is impossible (rank one).
        let sys = BilinearSystem {
            characteristic: 5,
            f_count: 2,
            g_count: 2,
            equations: vec![
                eq(&[(0, 0, 1)], 1),
                eq(&[(0, 1, 1)], 0),
                eq(&[(1, 0, 1)], 0),
                eq(&[(1, 1, 1)], 1),
            ],
        };
        assert_eq!(solve(&sys, 24).unwrap(), Outcome::Infeasible);
    }

    #[test]
    fn terms_of_one_equation_are_solved_together() {
        // f0 g0 + f1 g1 = 1 and f1 g1 = 1 force f0 g0 = 0.
        let sys = BilinearSystem {
            characteristic: 2,
            f_count: 2,
            g_count: 2,
            equations: vec![eq(&[(0, 0, 1), (1, 1, 1)], 1), eq(&[(1, 1, 1)], 1), eq(&[(0, 0, 1)], 1)],
        };
        assert_eq!(solve(&sys, 24).unwrap(), Outcome::Infeasible);
        let sys = BilinearSystem {
            equations: sys.equations[..2].to_vec(),
            ..sys
        };
        assert!(matches!(solve(&sys, 24).unwrap(), Outcome::Feasible { .. }));
    }

    #[test]
    fn capacity_is_enforced() {
        let sys = BilinearSystem {
            characteristic: 2,
            f_count: 13,
            g_count: 12,
            equations: vec![],
        };
        assert!(matches!(
            solve(&sys, 24),
            Err(Error::Capacity { needed: 25, cap: 24 })
        ));
    }
}

//! Finite-dimensional representations of finite acyclic quivers without
//! relations, their Hom and Ext groups, and interval decomposition of
//! zigzags.

use crate::linalg::{Fp, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    /// `(source, target)` pairs.
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// A zigzag on `n` vertices; `forward[i]` orients the edge between `i`
    /// and `i + 1` as `i → i+1`.
    pub fn zigzag(forward: &[bool]) -> Quiver {
        let arrows = forward
            .iter()
            .enumerate()
            .map(|(i, &fw)| if fw { (i, i + 1) } else { (i + 1, i) })
            .collect();
        Quiver {
            vertices: forward.len() + 1,
            arrows,
        }
    }
}

/// A representation: a vector space per vertex, a matrix per arrow
/// (`dims[target] × dims[source]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

impl Rep {
    pub fn zero(q: &Quiver) -> Rep {
        Rep {
            dims: vec![0; q.vertices],
            maps: q.arrows.iter().map(|_| Mat::zeros(0, 0)).collect(),
        }
    }

    pub fn is_consistent(&self, q: &Quiver) -> bool {
        self.dims.len() == q.vertices
            && self.maps.len() == q.arrows.len()
            && q.arrows
                .iter()
                .zip(&self.maps)
                .all(|(&(s, t), m)| m.rows() == self.dims[t] && m.cols() == self.dims[s])
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        Rep {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// The map `δ: ⊕_v Hom(M_v, N_v) → ⊕_α Hom(M_{s α}, N_{t α})`,
/// `δ(φ)_α = N_α φ_s − φ_t M_α`, whose kernel is `Hom(M, N)` and whose
/// cokernel is `Ext¹(M, N)`.
///
/// Both sides are flattened: block `v` (resp. `α`) holds a matrix in
/// row-major order starting at `vertex_offset[v]` (resp. `arrow_offset[α]`).
#[derive(Clone, Debug)]
pub struct Delta {
    pub matrix: Mat,
    pub vertex_offset: Vec<usize>,
    pub arrow_offset: Vec<usize>,
}

pub fn delta(q: &Quiver, m: &Rep, n: &Rep, f: Fp) -> Delta {
    let mut vertex_offset = Vec::with_capacity(q.vertices + 1);
    let mut acc = 0;
    for v in 0..q.vertices {
        vertex_offset.push(acc);
        acc += n.dims[v] * m.dims[v];
    }
    vertex_offset.push(acc);
    let domain = acc;
    let mut arrow_offset = Vec::with_capacity(q.arrows.len() + 1);
    acc = 0;
    for &(s, t) in &q.arrows {
        arrow_offset.push(acc);
        acc += n.dims[t] * m.dims[s];
    }
    arrow_offset.push(acc);
    let mut matrix = Mat::zeros(acc, domain);
    for (a, &(s, t)) in q.arrows.iter().enumerate() {
        let (ms, mt, ns, nt) = (m.dims[s], m.dims[t], n.dims[s], n.dims[t]);
        let row0 = arrow_offset[a];
        // Entry (r, c) of the block is Σ_k N_α[r,k] φ_s[k,c] − Σ_k φ_t[r,k] M_α[k,c].
        for r in 0..nt {
            for c in 0..ms {
                let row = row0 + r * ms + c;
                for k in 0..ns {
                    let coef = n.maps[a].get(r, k);
                    if coef != 0 {
                        let col = vertex_offset[s] + k * ms + c;
                        let v = f.add(matrix.get(row, col), coef);
                        matrix.set(row, col, v);
                    }
                }
                for k in 0..mt {
                    let coef = m.maps[a].get(k, c);
                    if coef != 0 {
                        let col = vertex_offset[t] + r * mt + k;
                        let v = f.sub(matrix.get(row, col), coef);
                        matrix.set(row, col, v);
                    }
                }
            }
        }
    }
    Delta {
        matrix,
        vertex_offset,
        arrow_offset,
    }
}

/// `(dim Hom(M, N), dim Ext¹(M, N))`.
pub fn hom_ext_dims(q: &Quiver, m: &Rep, n: &Rep, f: Fp) -> (usize, usize) {
    let d = delta(q, m, n, f);
    let rank = d.matrix.rank(f);
    (d.matrix.cols() - rank, d.matrix.rows() - rank)
}

/// Rank of the canonical map `lim → colim` of the restriction of `rep` to
/// the full subquiver on `vertices`, which must be connected.
pub fn lim_colim_rank(q: &Quiver, rep: &Rep, vertices: &[usize], f: Fp) -> usize {
    let mut offset = vec![usize::MAX; q.vertices];
    let mut total = 0;
    for &v in vertices {
        offset[v] = total;
        total += rep.dims[v];
    }
    if total == 0 {
        return 0;
    }
    let inside: Vec<usize> = (0..q.arrows.len())
        .filter(|&a| {
            let (s, t) = q.arrows[a];
            offset[s] != usize::MAX && offset[t] != usize::MAX
        })
        .collect();
    // lim = ker(x ↦ (M_α x_s − x_t)_α).
    let rows: usize = inside.iter().map(|&a| rep.dims[q.arrows[a].1]).sum();
    let mut lim_eq = Mat::zeros(rows, total);
    // colim = coker(y_α ↦ ι_t M_α y − ι_s y); relations stored as columns.
    let mut rel_cols: Vec<Vec<u32>> = Vec::new();
    let mut row = 0;
    for &a in &inside {
        let (s, t) = q.arrows[a];
        let m = &rep.maps[a];
        for r in 0..rep.dims[t] {
            for c in 0..rep.dims[s] {
                lim_eq.set(row + r, offset[s] + c, m.get(r, c));
            }
            let v = f.sub(lim_eq.get(row + r, offset[t] + r), 1);
            lim_eq.set(row + r, offset[t] + r, v);
        }
        row += rep.dims[t];
        for c in 0..rep.dims[s] {
            let mut col = vec![0; total];
            for r in 0..rep.dims[t] {
                col[offset[t] + r] = m.get(r, c);
            }
            col[offset[s] + c] = f.sub(col[offset[s] + c], 1);
            rel_cols.push(col);
        }
    }
    let lim = lim_eq.kernel(f);
    if lim.is_empty() {
        return 0;
    }
    // On a connected subquiver the map factors through any single vertex;
    // use the first one.
    let first = vertices[0];
    let lo = offset[first];
    let hi = lo + rep.dims[first];
    let images: Vec<Vec<u32>> = lim
        .iter()
        .map(|x| {
            let mut y = vec![0; total];
            y[lo..hi].copy_from_slice(&x[lo..hi]);
            y
        })
        .collect();
    let rel = Mat::from_columns(total, &rel_cols);
    let rel_rank = if rel_cols.is_empty() { 0 } else { rel.rank(f) };
    let both = rel.hcat(&Mat::from_columns(total, &images));
    both.rank(f) - rel_rank
}

/// Interval decomposition of a zigzag representation: `(i, j, multiplicity)`
/// for every interval of vertices `[i, j]` occurring as a summand.
pub fn zigzag_intervals(q: &Quiver, rep: &Rep, f: Fp) -> Vec<(usize, usize, usize)> {
    let n = q.vertices;
    let mut r = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in i..n {
            let verts: Vec<usize> = (i..=j).collect();
            r[i][j] = lim_colim_rank(q, rep, &verts, f);
        }
    }
    let get = |i: isize, j: usize| -> usize {
        if i < 0 || j >= n {
            0
        } else {
            r[i as usize][j]
        }
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let m = get(i as isize, j) as isize - get(i as isize - 1, j) as isize
                - get(i as isize, j + 1) as isize
                + get(i as isize - 1, j + 1) as isize;
            debug_assert!(m >= 0, "negative interval multiplicity");
            if m > 0 {
                out.push((i, j, m as usize));
            }
        }
    }
    out
}

//! Representations of the cyclic stratification of the circle and their
//! decomposition into strings and bands.
//!
//! For points `p_0 < … < p_{n-1}` in `[0, C)` the strata are ordered around
//! the circle as `arc_0, p_0, arc_1, p_1, …, arc_{n-1}, p_{n-1}`, where
//! `arc_i` ends at `p_i` and `arc_0` wraps through `0`. Vertex `2i` is
//! `arc_i` and vertex `2i + 1` is `p_i`. Each point generizes to its two
//! neighbouring arcs: arrow `2i` is `p_i → arc_i`, arrow `2i + 1` is
//! `p_i → arc_{i+1}` (indices mod `n`). Arrow `u` therefore joins vertex
//! `u` and vertex `u + 1`.

use std::collections::BTreeMap;

use super::{Band, CircleSheaf};
use crate::barcode::Bar;
use crate::error::{Error, Result};
use crate::interval::{EndpointKind, Interval};
use crate::linalg::{Fp, Mat, Subspace};
use crate::quiver::{lim_colim_rank, Quiver, Rep};
use crate::scalar::{ExtendedScalar, Scalar};

/// One degree of a cyclic model: a dimension per vertex and a matrix per
/// arrow, `dims[target] × dims[source]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicRep {
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

impl CyclicRep {
    pub fn zero(points: usize) -> Self {
        CyclicRep {
            dims: vec![0; 2 * points],
            maps: vec![Mat::zeros(0, 0); 2 * points],
        }
    }

    pub fn direct_sum(&self, other: &CyclicRep) -> CyclicRep {
        CyclicRep {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Source and target vertex of arrow `u` on `2n` vertices.
fn arrow_ends(u: usize, verts: usize) -> (usize, usize) {
    if u % 2 == 0 {
        (u + 1, u)
    } else {
        (u, (u + 1) % verts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicModel {
    circumference: Scalar,
    characteristic: u32,
    points: Vec<Scalar>,
    reps: BTreeMap<i64, CyclicRep>,
}

impl CyclicModel {
    /// Checks that the points are increasing in `[0, C)` and every map has
    /// the shape its arrow demands.
    pub fn new(
        circumference: Scalar,
        characteristic: u32,
        points: Vec<Scalar>,
        reps: BTreeMap<i64, CyclicRep>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InconsistentModel(m));
        if !circumference.is_positive() {
            return bad(format!("circumference {circumference}"));
        }
        if points.is_empty() {
            return bad("a stratification needs at least one point".into());
        }
        if points.windows(2).any(|w| w[0] >= w[1])
            || points[0].is_negative()
            || points[points.len() - 1] >= circumference
        {
            return bad("points must increase within [0, C)".into());
        }
        let verts = 2 * points.len();
        for (d, rep) in &reps {
            if rep.dims.len() != verts || rep.maps.len() != verts {
                return bad(format!("degree {d}: expected {verts} strata and arrows"));
            }
            for (u, m) in rep.maps.iter().enumerate() {
                let (s, t) = arrow_ends(u, verts);
                if m.rows() != rep.dims[t] || m.cols() != rep.dims[s] {
                    return bad(format!(
                        "degree {d}, arrow {u}: map is {}×{}, strata need {}×{}",
                        m.rows(),
                        m.cols(),
                        rep.dims[t],
                        rep.dims[s]
                    ));
                }
            }
        }
        Ok(CyclicModel {
            circumference,
            characteristic,
            points,
            reps,
        })
    }

    /// The model of `F` on the stratification by its reduced endpoints
    /// together with `extra` points.
    pub fn of_sheaf(f: &CircleSheaf, extra: &[Scalar]) -> Result<Self> {
        let c = f.circumference();
        let mut points = f.endpoints_mod();
        points.extend(extra.iter().map(|x| super::reduce(x, c)));
        if points.is_empty() {
            points.push(Scalar::zero());
        }
        points.sort();
        points.dedup();
        let n = points.len();
        let mut reps: BTreeMap<i64, CyclicRep> = BTreeMap::new();
        let mut add = |d: i64, r: CyclicRep| {
            let acc = reps.remove(&d).unwrap_or_else(|| CyclicRep::zero(n));
            reps.insert(d, acc.direct_sum(&r));
        };
        for bar in f.spirals() {
            add(bar.degree, spiral_rep(&bar.interval, &points, c));
        }
        for band in f.bands() {
            add(band.degree, band_rep(&band.monodromy, n));
        }
        CyclicModel::new(c.clone(), f.characteristic(), points, reps)
    }

    pub fn circumference(&self) -> &Scalar {
        &self.circumference
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    pub fn reps(&self) -> &BTreeMap<i64, CyclicRep> {
        &self.reps
    }

    pub fn vertices(&self) -> usize {
        2 * self.points.len()
    }

    /// A point of stratum `v` in the fundamental domain of the cover.
    pub fn sample(&self, v: usize) -> Scalar {
        sample(&self.points, &self.circumference, v)
    }

    /// Stalk dimension of degree `d` at stratum `v`.
    pub fn stalk(&self, d: i64, v: usize) -> usize {
        self.reps.get(&d).map_or(0, |r| r.dims[v])
    }
}

fn sample(points: &[Scalar], c: &Scalar, v: usize) -> Scalar {
    let n = points.len();
    let i = v / 2;
    if v % 2 == 1 {
        return points[i].clone();
    }
    let prev = if i == 0 {
        &points[n - 1] - c
    } else {
        points[i - 1].clone()
    };
    prev.midpoint(&points[i])
}

/// Endpoint of the cover vertex `2n·m + u`: the point itself, or the left
/// or right end of the arc.
fn cover_end(points: &[Scalar], c: &Scalar, v: i64, left: bool) -> (Scalar, EndpointKind) {
    let n = points.len() as i64;
    let (m, u) = (v.div_euclid(2 * n), v.rem_euclid(2 * n));
    let i = (u / 2) as usize;
    let deck = |k: i64| c * &Scalar::int(k);
    if u % 2 == 1 {
        return (&points[i] + &deck(m), EndpointKind::Closed);
    }
    if !left {
        return (&points[i] + &deck(m), EndpointKind::Open);
    }
    let p = if i == 0 {
        &points[n as usize - 1] + &deck(m - 1)
    } else {
        &points[i - 1] + &deck(m)
    };
    (p, EndpointKind::Open)
}

/// `π_! k_I` on the stratification: the stalk at stratum `u` has one basis
/// vector per deck translate of its sample lying in `I`.
fn spiral_rep(iv: &Interval, points: &[Scalar], c: &Scalar) -> CyclicRep {
    let n = points.len();
    let verts = 2 * n;
    let lo = iv.left().finite().expect("bounded lift").clone();
    let hi = iv.right().finite().expect("bounded lift").clone();
    let basis: Vec<Vec<i64>> = (0..verts)
        .map(|u| {
            let s = sample(points, c, u);
            let from = i64::try_from(((&lo - &s) / c).floor()).expect("deck index fits");
            let to = i64::try_from(((&hi - &s) / c).floor()).expect("deck index fits");
            (from..=to + 1)
                .filter(|&m| iv.contains(&(&s + &(c * &Scalar::int(m)))))
                .collect()
        })
        .collect();
    let maps = (0..verts)
        .map(|u| {
            let (s, t) = arrow_ends(u, verts);
            let wrap = i64::from(u == verts - 1);
            let mut m = Mat::zeros(basis[t].len(), basis[s].len());
            for (col, k) in basis[s].iter().enumerate() {
                if let Some(row) = basis[t].iter().position(|&kt| kt == k + wrap) {
                    m.set(row, col, 1);
                }
            }
            m
        })
        .collect();
    CyclicRep {
        dims: basis.iter().map(Vec::len).collect(),
        maps,
    }
}

/// A band: identities everywhere except the arrow `p_{n-1} → arc_0`, which
/// carries `T`. Transport once around in the positive direction is `T`.
fn band_rep(t: &Mat, n: usize) -> CyclicRep {
    let r = t.rows();
    let verts = 2 * n;
    CyclicRep {
        dims: vec![r; verts],
        maps: (0..verts)
            .map(|u| if u == verts - 1 { t.clone() } else { Mat::identity(r) })
            .collect(),
    }
}

/// A linear relation `R ⊆ X × Y`, stored as a subspace of `X ⊕ Y`.
#[derive(Clone, Debug)]
struct Relation {
    x: usize,
    y: usize,
    space: Subspace,
}

impl Relation {
    /// `{(x, M x)}` when `forward`, else `{(M y, y)}`.
    fn of_map(m: &Mat, forward: bool, f: Fp) -> Relation {
        let (x, y) = if forward { (m.cols(), m.rows()) } else { (m.rows(), m.cols()) };
        let vectors: Vec<Vec<u32>> = (0..m.cols())
            .map(|k| {
                let mut e = vec![0; m.cols()];
                e[k] = 1;
                let img = m.column(k);
                if forward {
                    [e, img].concat()
                } else {
                    [img, e].concat()
                }
            })
            .collect();
        Relation {
            x,
            y,
            space: Subspace::span(x + y, &vectors, f),
        }
    }

    fn then(&self, next: &Relation, f: Fp) -> Relation {
        debug_assert_eq!(self.y, next.x);
        // Embed both in X ⊕ Y ⊕ Z, intersect, and forget Y.
        let (x, y, z) = (self.x, self.y, next.y);
        let lift_r: Vec<Vec<u32>> = self
            .space
            .vectors()
            .into_iter()
            .map(|v| [v, vec![0; z]].concat())
            .chain((0..z).map(|k| unit(x + y + z, x + y + k)))
            .collect();
        let lift_s: Vec<Vec<u32>> = next
            .space
            .vectors()
            .into_iter()
            .map(|v| [vec![0; x], v].concat())
            .chain((0..x).map(|k| unit(x + y + z, k)))
            .collect();
        let meet = Subspace::span(x + y + z, &lift_r, f).intersect(&Subspace::span(x + y + z, &lift_s, f), f);
        let vectors: Vec<Vec<u32>> = meet
            .vectors()
            .into_iter()
            .map(|v| [&v[..x], &v[x + y..]].concat())
            .collect();
        Relation {
            x,
            y: z,
            space: Subspace::span(x + z, &vectors, f),
        }
    }

    fn inverse(&self, f: Fp) -> Relation {
        let vectors: Vec<Vec<u32>> = self
            .space
            .vectors()
            .into_iter()
            .map(|v| [&v[self.x..], &v[..self.x]].concat())
            .collect();
        Relation {
            x: self.y,
            y: self.x,
            space: Subspace::span(self.x + self.y, &vectors, f),
        }
    }

    /// `{y : (x, y) ∈ R for some x ∈ U}`.
    fn image(&self, u: &Subspace, f: Fp) -> Subspace {
        let n = self.x + self.y;
        let box_: Vec<Vec<u32>> = u
            .vectors()
            .into_iter()
            .map(|v| [v, vec![0; self.y]].concat())
            .chain((0..self.y).map(|k| unit(n, self.x + k)))
            .collect();
        let meet = self.space.intersect(&Subspace::span(n, &box_, f), f);
        let ys: Vec<Vec<u32>> = meet.vectors().into_iter().map(|v| v[self.x..].to_vec()).collect();
        Subspace::span(self.y, &ys, f)
    }

    /// The stable image of iterating from `start`, which must be `0` or the
    /// whole space so the sequence is monotone.
    fn stable(&self, start: Subspace, f: Fp) -> Subspace {
        let mut u = start;
        loop {
            let next = self.image(&u, f);
            if next == u {
                return u;
            }
            u = next;
        }
    }
}

fn unit(n: usize, k: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[k] = 1;
    e
}

/// The monodromy of the band part of `rep`, as a matrix on `V♭ / V♯` at
/// `arc_0`, where `C` is transport once around the loop.
fn band_part(rep: &CyclicRep, f: Fp) -> Result<Option<Mat>> {
    let verts = rep.dims.len();
    let mut c = Relation::of_map(&Mat::identity(rep.dims[0]), true, f);
    for u in 0..verts {
        c = c.then(&Relation::of_map(&rep.maps[u], u % 2 == 1, f), f);
    }
    let dim = rep.dims[0];
    let inv = c.inverse(f);
    let c1 = c.stable(Subspace::full(dim), f);
    let c2 = c.stable(Subspace::zero(dim), f);
    let i1 = inv.stable(Subspace::full(dim), f);
    let i2 = inv.stable(Subspace::zero(dim), f);
    let flat = c1.intersect(&i1, f);
    let sharp = c1.intersect(&i2, f).sum(&c2.intersect(&i1, f), f);
    let r = flat.dim() - sharp.dim();
    if r == 0 {
        return Ok(None);
    }
    let mut basis = sharp.vectors();
    let k = basis.len();
    for v in flat.vectors() {
        if !Subspace::span(dim, &basis, f).contains(&v, f) {
            basis.push(v);
        }
    }
    debug_assert_eq!(basis.len(), flat.dim());
    let coords = Mat::from_columns(dim, &basis);
    let mut t = Mat::zeros(r, r);
    for i in 0..r {
        let b = &basis[k + i];
        // Some image of b that stays in V♭; it is unique modulo V♯.
        let target = Relation {
            x: dim,
            y: dim,
            space: c.space.intersect(
                &Subspace::span(
                    2 * dim,
                    &std::iter::once([b.clone(), vec![0; dim]].concat())
                        .chain(flat.vectors().into_iter().map(|v| [vec![0; dim], v].concat()))
                        .collect::<Vec<_>>(),
                    f,
                ),
                f,
            ),
        };
        let pivot = b.iter().position(|&x| x != 0).expect("basis vector is nonzero");
        let hit = target
            .space
            .vectors()
            .into_iter()
            .find(|v| v[pivot] != 0)
            .ok_or_else(|| Error::Internal("transport leaves V♭".into()))?;
        let scale = f.mul(b[pivot], f.inv(hit[pivot]));
        let y: Vec<u32> = hit[dim..].iter().map(|&x| f.mul(x, scale)).collect();
        let sol = coords
            .solve(&y, f)
            .ok_or_else(|| Error::Internal("transport image outside V♭".into()))?;
        for j in 0..r {
            t.set(j, i, sol[k + j]);
        }
    }
    Ok(Some(t))
}

/// Strings of `rep`: intervals of the universal cover starting in the
/// fundamental domain, found on a window wide enough that no string can
/// touch its boundary.
fn strings(rep: &CyclicRep, f: Fp) -> Vec<(i64, i64, usize)> {
    let verts = rep.dims.len() as i64;
    let total = rep.total();
    let margin = total as i64 + 1;
    let lo = -margin;
    let width = (verts + 2 * margin) as usize;
    let vertex = |w: usize| (lo + w as i64).rem_euclid(verts) as usize;
    let forward: Vec<bool> = (0..width - 1).map(|w| vertex(w) % 2 == 1).collect();
    let q = Quiver::zigzag(&forward);
    let window = Rep {
        dims: (0..width).map(|w| rep.dims[vertex(w)]).collect(),
        maps: (0..width - 1).map(|w| rep.maps[vertex(w)].clone()).collect(),
    };
    debug_assert!(window.is_consistent(&q));
    let mut memo: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut rank = |i: usize, j: usize| -> usize {
        *memo.entry((i, j)).or_insert_with(|| {
            let vs: Vec<usize> = (i..=j).collect();
            lim_colim_rank(&q, &window, &vs, f)
        })
    };
    let mut out = Vec::new();
    let first = margin as usize;
    for i in first..first + verts as usize {
        if rep.dims[vertex(i)] == 0 {
            continue;
        }
        for j in i..(i + total).min(width - 1) {
            let m = rank(i, j) as isize - rank(i - 1, j) as isize - rank(i, j + 1) as isize
                + rank(i - 1, j + 1) as isize;
            debug_assert!(m >= 0, "negative interval multiplicity");
            if m > 0 {
                out.push((lo + i as i64, lo + j as i64, m as usize));
            }
            if rank(i, j) == 0 {
                break;
            }
        }
    }
    out
}

/// Decomposes every degree into spirals and at most one band, and checks
/// that the summands account for every stalk dimension.
pub fn decompose_cyclic(model: &CyclicModel) -> Result<CircleSheaf> {
    let f = Fp::new(model.characteristic);
    let c = &model.circumference;
    let n = model.points.len();
    let mut spirals = Vec::new();
    let mut bands = Vec::new();
    for (&d, rep) in &model.reps {
        let mut covered = 0usize;
        for (s, t, mult) in strings(rep, f) {
            let (l, lk) = cover_end(&model.points, c, s, true);
            let (r, rk) = cover_end(&model.points, c, t, false);
            let iv = Interval::new(ExtendedScalar::Finite(l), lk, ExtendedScalar::Finite(r), rk)
                .map_err(|e| Error::Internal(format!("string [{s}, {t}] is not an interval: {e}")))?;
            covered += mult * (t - s + 1) as usize;
            spirals.extend(std::iter::repeat(Bar::new(iv, d)).take(mult));
        }
        if let Some(t) = band_part(rep, f)? {
            covered += 2 * n * t.rows();
            bands.push(Band::new(d, t));
        }
        if covered != rep.total() {
            return Err(Error::InconsistentModel(format!(
                "degree {d}: summands cover {covered} of {} dimensions",
                rep.total()
            )));
        }
    }
    CircleSheaf::new(c.clone(), model.characteristic, spirals, bands)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{circle_stalk, default_circumference};

    fn arc(iv: &str, d: i64) -> Bar {
        Bar::new(iv.parse().unwrap(), d)
    }

    fn round_trip(f: &CircleSheaf) {
        let m = CyclicModel::of_sheaf(f, &[]).unwrap();
        for v in 0..m.vertices() {
            let x = m.sample(v);
            let st = circle_stalk(f, &x);
            for (d, r) in m.reps() {
                assert_eq!(r.dims[v], st.get(*d), "stratum {v} degree {d}");
            }
        }
        assert_eq!(&decompose_cyclic(&m).unwrap(), f);
    }

    #[test]
    fn single_arcs_round_trip() {
        for iv in ["[0,1]", "(0,1)", "[0,1)", "(0,1]", "{2}", "[7/2,9/2]", "(3,5)"] {
            let f = CircleSheaf::spirals_only(default_circumference(), 2, vec![arc(iv, 0)]).unwrap();
            round_trip(&f);
        }
    }

    #[test]
    fn winding_spiral() {
        let f = CircleSheaf::spirals_only(default_circumference(), 3, vec![arc("[0,5]", 1)]).unwrap();
        let m = CyclicModel::of_sheaf(&f, &[]).unwrap();
        // Points 0 and 1: the arc (0, 1) has rank two.
        assert_eq!(m.points(), &[Scalar::zero(), Scalar::one()]);
        assert_eq!(m.stalk(1, 2), 2);
        assert_eq!(m.stalk(1, 0), 1);
        assert_eq!(decompose_cyclic(&m).unwrap(), f);
    }

    #[test]
    fn bands_round_trip() {
        let t = Mat::from_rows(2, 2, vec![0, 1, 1, 1]);
        let f = CircleSheaf::new(
            default_circumference(),
            2,
            vec![arc("(1,3]", 0), arc("[0,9]", 0)],
            vec![Band::new(0, t), Band::trivial(1, 1)],
        )
        .unwrap();
        round_trip(&f);
        let twist = CircleSheaf::new(default_circumference(), 5, vec![], vec![Band::new(2, Mat::from_rows(1, 1, vec![3]))]).unwrap();
        let m = CyclicModel::of_sheaf(&twist, &[Scalar::new(1, 3), Scalar::new(5, 2)]).unwrap();
        assert_eq!(decompose_cyclic(&m).unwrap(), twist);
    }

    #[test]
    fn constant_rank_one_is_the_trivial_band() {
        let rep = CyclicRep {
            dims: vec![1; 4],
            maps: vec![Mat::identity(1); 4],
        };
        let m = CyclicModel::new(default_circumference(), 2, vec![Scalar::zero(), Scalar::int(2)], [(0, rep)].into()).unwrap();
        let k = decompose_cyclic(&m).unwrap();
        assert_eq!(k, CircleSheaf::constant(default_circumference(), 2).unwrap());
    }

    #[test]
    fn inconsistent_models_are_rejected() {
        let rep = CyclicRep {
            dims: vec![1, 1],
            maps: vec![Mat::identity(1), Mat::zeros(2, 1)],
        };
        assert!(matches!(
            CyclicModel::new(default_circumference(), 2, vec![Scalar::zero()], [(0, rep)].into()),
            Err(Error::InconsistentModel(_))
        ));
        assert!(CyclicModel::new(default_circumference(), 2, vec![Scalar::int(4)], BTreeMap::new()).is_err());
    }
}

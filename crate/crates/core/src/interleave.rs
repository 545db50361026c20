//! Interleaving certificates and two-sided bounds on the interleaving
//! distance for barcodes on the line.
//!
//! A certificate at `a ≥ 0` is a pair `f: K_a F → G`, `g: K_a G → F` with
//! `g ∘ K_a f = ρ_{0,2a}` on `F` and `f ∘ K_a g = ρ_{0,2a}` on `G`.
//!
//! Feasibility at `a` depends only on the relative order of the points
//! `p ± k a` (`k ≤ 4`) and the bar lengths against `2a` and `4a`, so it is
//! constant on the open cells cut out by the values `|p − q| / k`,
//! `k = 1, …, 4`. It is also monotone in `a`. The distance scan probes each
//! such value and one point inside every cell.

use std::collections::BTreeMap;

use crate::barcode::{global_sections, global_sections_c, Bar, GradedBarcode};
use crate::error::{Error, Result};
use crate::hom::{compose, hom_nonzero, structure_constant, thicken_morphism, Morphism};
use crate::scalar::{ExtendedScalar, Scalar};
use crate::search::{self, BilinearSystem, Equation, Outcome};
use crate::thicken::{restriction, restriction_coefficient, thicken_tracked};

/// Default bound on the number of unknown coefficients in exhaustive search.
pub const DEFAULT_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub a: Scalar,
    /// `K_a F → G`.
    pub f: Morphism,
    /// `K_a G → F`.
    pub g: Morphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceBounds<W = Certificate> {
    pub lower: ExtendedScalar,
    pub upper: ExtendedScalar,
    pub exact: bool,
    pub witness: Option<W>,
}

impl<W> DistanceBounds<W> {
    /// `(lower, upper, exact)` without the witness.
    pub fn summary(&self) -> (ExtendedScalar, ExtendedScalar, bool) {
        (self.lower.clone(), self.upper.clone(), self.exact)
    }

    pub fn infinite(exact: bool) -> Self {
        DistanceBounds {
            lower: ExtendedScalar::PosInf,
            upper: ExtendedScalar::PosInf,
            exact,
            witness: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Matching,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    Pass,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum unknowns for exhaustive search.
    pub cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { cap: DEFAULT_CAP }
    }
}

fn same_field(f: &GradedBarcode, g: &GradedBarcode) -> Result<u32> {
    if f.characteristic() != g.characteristic() {
        return Err(Error::CharacteristicMismatch(
            f.characteristic(),
            g.characteristic(),
        ));
    }
    Ok(f.characteristic())
}

fn check_parameter(a: &Scalar) -> Result<()> {
    if a.is_negative() {
        return Err(Error::InvalidArgument(format!(
            "interleaving parameter must be non-negative, got {a}"
        )));
    }
    Ok(())
}

/// Check both interleaving identities as exact morphism equalities.
pub fn verify_certificate(f: &GradedBarcode, g: &GradedBarcode, cert: &Certificate) -> Result<bool> {
    same_field(f, g)?;
    check_parameter(&cert.a)?;
    let a = &cert.a;
    let kf = crate::thicken::thicken(f, a);
    let kg = crate::thicken::thicken(g, a);
    let shapes = [
        (cert.f.source(), &kf, "source of f"),
        (cert.f.target(), g, "target of f"),
        (cert.g.source(), &kg, "source of g"),
        (cert.g.target(), f, "target of g"),
    ];
    for (have, want, what) in shapes {
        if have != want {
            return Err(Error::ShapeMismatch(format!("{what} is {have}, expected {want}")));
        }
    }
    let lhs_f = compose(&thicken_morphism(&cert.f, a), &cert.g)?;
    let lhs_g = compose(&thicken_morphism(&cert.g, a), &cert.f)?;
    Ok(lhs_f == double_restriction(f, a) && lhs_g == double_restriction(g, a))
}

/// `ρ_{0,2a}: K_a K_a F → F`, with the summand of bar `k` located through
/// both thickening steps. Bars that become equal after thickening would be
/// paired differently by a direct `K_{2a}`.
fn double_restriction(f: &GradedBarcode, a: &Scalar) -> Morphism {
    let (kf, pf) = thicken_tracked(f, a);
    let (kkf, q) = thicken_tracked(&kf, a);
    let p = f.characteristic();
    let two_a = a + a;
    let blocks = f
        .bars()
        .iter()
        .enumerate()
        .filter_map(|(k, bar)| {
            let r = restriction_coefficient(bar, &two_a) % p;
            (r != 0).then_some(((q[pf[k]], k), r))
        })
        .collect();
    Morphism::from_clean(kkf, f.clone(), blocks)
}

/// Identity certificate at `a = 0` when `F = G`.
pub fn identity_certificate(f: &GradedBarcode) -> Certificate {
    Certificate {
        a: Scalar::zero(),
        f: Morphism::identity(f),
        g: Morphism::identity(f),
    }
}

/// Move a certificate from `a` to `b ≥ a` by precomposing with `ρ_{a,b}`.
pub fn widen_certificate(
    f: &GradedBarcode,
    g: &GradedBarcode,
    cert: &Certificate,
    b: &Scalar,
) -> Result<Certificate> {
    Ok(Certificate {
        a: b.clone(),
        f: compose(&restriction(f, &cert.a, b)?, &cert.f)?,
        g: compose(&restriction(g, &cert.a, b)?, &cert.g)?,
    })
}

/// Unknowns and equations of the interleaving problem at `a`.
struct Layout {
    kf: GradedBarcode,
    kg: GradedBarcode,
    /// `(i, j)`: block from `K_a F` bar `i` to `G` bar `j`.
    f_vars: Vec<(usize, usize)>,
    /// `(j, l)`: block from `K_a G` bar `j` to `F` bar `l`.
    g_vars: Vec<(usize, usize)>,
    system: BilinearSystem,
}

/// One family of identities: `g ∘ K_a f = ρ_{0,2a}` on `x`, with `f`
/// running `K_a x → y` and `g` running `K_a y → x`.
#[allow(clippy::too_many_arguments)]
fn identities(
    x: &GradedBarcode,
    kx: &GradedBarcode,
    y: &GradedBarcode,
    ky: &GradedBarcode,
    a: &Scalar,
    f_vars: &[(usize, usize)],
    g_index: &BTreeMap<(usize, usize), usize>,
    swap: bool,
    p: u32,
) -> Vec<Equation> {
    let (kkx, q) = thicken_tracked(kx, a);
    let (_, py) = thicken_tracked(y, a);
    let mut eqs: BTreeMap<(usize, usize), Equation> = BTreeMap::new();
    for (u, &(i, j)) in f_vars.iter().enumerate() {
        let (src, mid) = (q[i], py[j]);
        for l in 0..x.len() {
            let Some(&v) = g_index.get(&(mid, l)) else {
                continue;
            };
            let c = structure_constant(&kkx.bars()[src], &ky.bars()[mid], &x.bars()[l], p);
            if c != 0 {
                let term = if swap { (v, u, c) } else { (u, v, c) };
                eqs.entry((src, l)).or_default().terms.push(term);
            }
        }
    }
    for (&key, &r) in double_restriction(x, a).blocks() {
        eqs.entry(key).or_default().rhs = r;
    }
    eqs.into_values().collect()
}

fn layout(f: &GradedBarcode, g: &GradedBarcode, a: &Scalar) -> Result<Layout> {
    let p = same_field(f, g)?;
    let kf = crate::thicken::thicken(f, a);
    let kg = crate::thicken::thicken(g, a);
    let vars = |src: &GradedBarcode, tgt: &GradedBarcode| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, x) in src.bars().iter().enumerate() {
            for (j, y) in tgt.bars().iter().enumerate() {
                if hom_nonzero(x, y) {
                    out.push((i, j));
                }
            }
        }
        out
    };
    let f_vars = vars(&kf, g);
    let g_vars = vars(&kg, f);
    let index = |vs: &[(usize, usize)]| -> BTreeMap<(usize, usize), usize> {
        vs.iter().enumerate().map(|(k, &ij)| (ij, k)).collect()
    };
    let (f_index, g_index) = (index(&f_vars), index(&g_vars));
    let mut equations = identities(f, &kf, g, &kg, a, &f_vars, &g_index, false, p);
    equations.extend(identities(g, &kg, f, &kf, a, &g_vars, &f_index, true, p));
    let system = BilinearSystem {
        characteristic: p,
        f_count: f_vars.len(),
        g_count: g_vars.len(),
        equations,
    };
    Ok(Layout {
        kf,
        kg,
        f_vars,
        g_vars,
        system,
    })
}

/// Number of unknown coefficients of the exhaustive problem at `a`.
pub fn unknowns(f: &GradedBarcode, g: &GradedBarcode, a: &Scalar) -> Result<usize> {
    Ok(layout(f, g, a)?.system.unknowns())
}

fn assemble(
    lay: &Layout,
    f: &GradedBarcode,
    g: &GradedBarcode,
    a: &Scalar,
    fv: &[u32],
    gv: &[u32],
) -> Result<Certificate> {
    let blocks = |vars: &[(usize, usize)], vals: &[u32]| -> BTreeMap<(usize, usize), u32> {
        vars.iter().copied().zip(vals.iter().copied()).collect()
    };
    Ok(Certificate {
        a: a.clone(),
        f: Morphism::new(lay.kf.clone(), g.clone(), blocks(&lay.f_vars, fv))?,
        g: Morphism::new(lay.kg.clone(), f.clone(), blocks(&lay.g_vars, gv))?,
    })
}

fn checked(f: &GradedBarcode, g: &GradedBarcode, cert: Certificate) -> Result<Certificate> {
    if !verify_certificate(f, g, &cert)? {
        return Err(Error::Internal(format!(
            "search produced an unverifiable certificate at a = {}",
            cert.a
        )));
    }
    Ok(cert)
}

/// Exhaustive search over all block assignments.
fn exhaustive(
    f: &GradedBarcode,
    g: &GradedBarcode,
    a: &Scalar,
    budget: Budget,
) -> Result<Option<Certificate>> {
    let lay = layout(f, g, a)?;
    match search::solve(&lay.system, budget.cap)? {
        Outcome::Infeasible => Ok(None),
        Outcome::Feasible { f: fv, g: gv } => {
            let cert = assemble(&lay, f, g, a, &fv, &gv)?;
            checked(f, g, cert).map(Some)
        }
    }
}

/// Solution of the single-bar problem `x` against `y` (either may be absent).
fn pair_solution(x: Option<&Bar>, y: Option<&Bar>, a: &Scalar, p: u32) -> Option<(u32, u32)> {
    let single = |b: Option<&Bar>| {
        GradedBarcode::from_bars(b.into_iter().cloned().collect(), p)
    };
    let lay = layout(&single(x), &single(y), a).ok()?;
    match search::solve(&lay.system, usize::MAX).ok()? {
        Outcome::Infeasible => None,
        Outcome::Feasible { f, g } => Some((
            f.first().copied().unwrap_or(0),
            g.first().copied().unwrap_or(0),
        )),
    }
}

/// Maximum bipartite matching by augmenting paths; `adj[l]` lists the right
/// vertices adjacent to `l`. Returns the partner of every left vertex.
pub(crate) fn max_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn augment(
        l: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].map_or(true, |l2| augment(l2, adj, seen, owner)) {
                owner[r] = Some(l);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    for l in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(l, adj, &mut seen, &mut owner);
    }
    let mut partner = vec![None; adj.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(l) = o {
            partner[*l] = Some(r);
        }
    }
    partner
}

/// Block-diagonal search: pair bars whose single-bar problems are solvable
/// and leave unpaired only bars whose `ρ_{0,2a}` vanishes.
fn matching(f: &GradedBarcode, g: &GradedBarcode, a: &Scalar) -> Result<Option<Certificate>> {
    let p = same_field(f, g)?;
    let (nf, ng) = (f.len(), g.len());
    let mut sols: BTreeMap<(usize, usize), (u32, u32)> = BTreeMap::new();
    // Left: F bars then one dummy per G bar. Right: G bars then one dummy per F bar.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nf + ng];
    for (i, x) in f.bars().iter().enumerate() {
        for (j, y) in g.bars().iter().enumerate() {
            if let Some(s) = pair_solution(Some(x), Some(y), a, p) {
                sols.insert((i, j), s);
                adj[i].push(j);
            }
        }
        if pair_solution(Some(x), None, a, p).is_some() {
            adj[i].push(ng + i);
        }
    }
    for (j, y) in g.bars().iter().enumerate() {
        if pair_solution(None, Some(y), a, p).is_some() {
            adj[nf + j].push(j);
        }
        adj[nf + j].extend((0..nf).map(|i| ng + i));
    }
    let partner = max_matching(&adj, ng + nf);
    if partner.iter().any(Option::is_none) {
        return Ok(None);
    }
    let (kf, pf) = thicken_tracked(f, a);
    let (kg, pg) = thicken_tracked(g, a);
    let mut fb = BTreeMap::new();
    let mut gb = BTreeMap::new();
    for i in 0..nf {
        let j = partner[i].expect("perfect matching");
        if j < ng {
            let (u, v) = sols[&(i, j)];
            fb.insert((pf[i], j), u);
            gb.insert((pg[j], i), v);
        }
    }
    let cert = Certificate {
        a: a.clone(),
        f: Morphism::new(kf, g.clone(), fb)?,
        g: Morphism::new(kg, f.clone(), gb)?,
    };
    checked(f, g, cert).map(Some)
}

/// Search for a certificate at `a`. `None` from the exhaustive strategy is
/// a proof that no certificate exists; from matching it is not.
pub fn check_interleaving(
    f: &GradedBarcode,
    g: &GradedBarcode,
    a: &Scalar,
    strategy: Strategy,
    budget: Budget,
) -> Result<Option<Certificate>> {
    check_parameter(a)?;
    same_field(f, g)?;
    match strategy {
        Strategy::Matching => matching(f, g, a),
        Strategy::Exhaustive => exhaustive(f, g, a, budget),
    }
}

/// Finite distance forces equal global sections with both supports.
pub fn finite_gate(f: &GradedBarcode, g: &GradedBarcode) -> Gate {
    if global_sections(f) == global_sections(g) && global_sections_c(f) == global_sections_c(g) {
        Gate::Pass
    } else {
        Gate::Infinite
    }
}

fn endpoint_values(f: &GradedBarcode, g: &GradedBarcode, divisors: &[i64]) -> Vec<Scalar> {
    let mut pts = f.finite_endpoints();
    pts.extend(g.finite_endpoints());
    pts.sort();
    pts.dedup();
    let mut out = vec![Scalar::zero()];
    for (k, p) in pts.iter().enumerate() {
        for q in &pts[k + 1..] {
            let d = q - p;
            for &n in divisors {
                out.push(&d / &Scalar::int(n));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `{0} ∪ {|p − q|, |p − q| / 2}` over all finite endpoints.
pub fn critical_grid(f: &GradedBarcode, g: &GradedBarcode) -> Vec<Scalar> {
    endpoint_values(f, g, &[1, 2])
}

/// Every value at which feasibility can change: `|p − q| / k`, `k ≤ 4`.
pub fn critical_values(f: &GradedBarcode, g: &GradedBarcode) -> Vec<Scalar> {
    endpoint_values(f, g, &[1, 2, 3, 4])
}

/// A point probed by the distance scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub a: Scalar,
    /// Whether `a` is a critical value (otherwise it lies inside a cell).
    pub critical: bool,
}

/// Critical values and one interior point per cell, ascending, ending with
/// a point beyond the largest critical value.
pub fn scan_points(critical: &[Scalar]) -> Vec<Probe> {
    let mut out = Vec::with_capacity(2 * critical.len() + 1);
    for (k, c) in critical.iter().enumerate() {
        if k > 0 {
            out.push(Probe {
                a: critical[k - 1].midpoint(c),
                critical: false,
            });
        }
        out.push(Probe {
            a: c.clone(),
            critical: true,
        });
    }
    let last = critical.last().cloned().unwrap_or_else(Scalar::zero);
    out.push(Probe {
        a: last + Scalar::one(),
        critical: false,
    });
    out
}

/// Outcome of probing one point of the scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Probed<W = Certificate> {
    Feasible(W),
    Infeasible,
    Unknown,
}

/// Generic scan: `probe` must return `Infeasible` only with a proof.
pub(crate) fn scan<W, F>(points: &[Probe], mut probe: F) -> Result<DistanceBounds<W>>
where
    F: FnMut(&Scalar) -> Result<Probed<W>>,
{
    let mut lower = Scalar::zero();
    let mut previous_infeasible = false;
    for pt in points {
        match probe(&pt.a)? {
            Probed::Feasible(cert) => {
                let exact = pt.a.is_zero() || (pt.critical && previous_infeasible);
                return Ok(DistanceBounds {
                    lower: ExtendedScalar::Finite(if exact { pt.a.clone() } else { lower }),
                    upper: ExtendedScalar::Finite(pt.a.clone()),
                    exact,
                    witness: Some(cert),
                });
            }
            Probed::Infeasible => {
                lower = pt.a.clone();
                previous_infeasible = true;
            }
            Probed::Unknown => previous_infeasible = false,
        }
    }
    // The last probe lies in the unbounded cell; infeasibility there holds
    // for every larger parameter.
    if previous_infeasible {
        Ok(DistanceBounds::infinite(true))
    } else {
        Ok(DistanceBounds {
            lower: ExtendedScalar::Finite(lower),
            upper: ExtendedScalar::PosInf,
            exact: false,
            witness: None,
        })
    }
}

/// Matching first, then exhaustive search within the budget.
pub fn probe(
    f: &GradedBarcode,
    g: &GradedBarcode,
    a: &Scalar,
    budget: Budget,
) -> Result<Probed> {
    if let Some(c) = matching(f, g, a)? {
        return Ok(Probed::Feasible(c));
    }
    match exhaustive(f, g, a, budget) {
        Ok(Some(c)) => Ok(Probed::Feasible(c)),
        Ok(None) => Ok(Probed::Infeasible),
        Err(Error::Capacity { .. }) => Ok(Probed::Unknown),
        Err(e) => Err(e),
    }
}

/// Two-sided bounds on the interleaving distance.
pub fn distance(f: &GradedBarcode, g: &GradedBarcode, budget: Budget) -> Result<DistanceBounds> {
    same_field(f, g)?;
    if finite_gate(f, g) == Gate::Infinite {
        return Ok(DistanceBounds::infinite(true));
    }
    let points = scan_points(&critical_values(f, g));
    scan(&points, |a| probe(f, g, a, budget))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(bars: &[(&str, i64)]) -> GradedBarcode {
        GradedBarcode::new(
            bars.iter()
                .map(|(s, d)| Bar::new(s.parse().unwrap(), *d))
                .collect(),
        )
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn identity_verifies() {
        let f = bc(&[("[0,2]", 0), ("(1,3)", 1), ("[1,1]", 0)]);
        assert!(verify_certificate(&f, &f, &identity_certificate(&f)).unwrap());
    }

    #[test]
    fn skyscraper_certificate() {
        let f = bc(&[("[0,2]", 0)]);
        let g = bc(&[("[1,1]", 0)]);
        let a = Scalar::one();
        let cert = Certificate {
            a: a.clone(),
            f: Morphism::new(
                bc(&[("[-1,3]", 0)]),
                g.clone(),
                BTreeMap::from([((0, 0), 1)]),
            )
            .unwrap(),
            g: Morphism::new(bc(&[("[0,2]", 0)]), f.clone(), BTreeMap::from([((0, 0), 1)]))
                .unwrap(),
        };
        assert!(verify_certificate(&f, &g, &cert).unwrap());
    }

    #[test]
    fn zero_maps_to_nothing_fail() {
        let f = bc(&[("[0,2]", 0)]);
        let z = GradedBarcode::empty();
        for a in [q(1, 2), q(1, 1), q(10, 1)] {
            let cert = Certificate {
                a: a.clone(),
                f: Morphism::zero(crate::thicken::thicken(&f, &a), z.clone()),
                g: Morphism::zero(z.clone(), f.clone()),
            };
            assert!(!verify_certificate(&f, &z, &cert).unwrap());
            let found =
                check_interleaving(&f, &z, &a, Strategy::Exhaustive, Budget::default()).unwrap();
            assert!(found.is_none());
        }
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let f = bc(&[("[0,2]", 0)]);
        let cert = identity_certificate(&f);
        let g = bc(&[("[0,3]", 0)]);
        assert!(matches!(
            verify_certificate(&f, &g, &cert),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn open_bar_against_shifted_point() {
        let f = bc(&[("(0,4)", 0)]);
        let g = bc(&[("[2,2]", 1)]);
        for s in [Strategy::Matching, Strategy::Exhaustive] {
            let c = check_interleaving(&f, &g, &q(2, 1), s, Budget::default()).unwrap();
            assert!(c.is_some(), "{s:?}");
        }
    }

    #[test]
    fn gate_examples() {
        let f = bc(&[("[0,2]", 0)]);
        assert_eq!(finite_gate(&f, &GradedBarcode::empty()), Gate::Infinite);
        assert_eq!(finite_gate(&f, &bc(&[("[1,1]", 0)])), Gate::Pass);
        assert_eq!(finite_gate(&f, &f), Gate::Pass);
    }

    #[test]
    fn grid_examples() {
        let f = bc(&[("[0,2]", 0)]);
        assert_eq!(
            critical_grid(&f, &bc(&[("[1,1]", 0)])),
            vec![q(0, 1), q(1, 2), q(1, 1), q(2, 1)]
        );
        assert!(critical_grid(&f, &f).contains(&Scalar::zero()));
        assert_eq!(
            critical_grid(&bc(&[("(0,4)", 0)]), &GradedBarcode::empty()),
            vec![q(0, 1), q(2, 1), q(4, 1)]
        );
    }

    #[test]
    fn distance_examples() {
        let f = bc(&[("[0,2]", 0)]);
        let d = distance(&f, &f, Budget::default()).unwrap();
        assert_eq!((d.lower.clone(), d.upper.clone(), d.exact), (fin(0), fin(0), true));
        let d = distance(&f, &bc(&[("[1,1]", 0)]), Budget::default()).unwrap();
        assert_eq!((d.lower.clone(), d.upper.clone(), d.exact), (fin(1), fin(1), true));
        let d = distance(&f, &GradedBarcode::empty(), Budget::default()).unwrap();
        assert_eq!(d, DistanceBounds::infinite(true));
    }

    fn fin(n: i64) -> ExtendedScalar {
        ExtendedScalar::Finite(Scalar::int(n))
    }

    #[test]
    fn widening_keeps_certificates_valid() {
        let f = bc(&[("[0,2]", 0)]);
        let g = bc(&[("[1,1]", 0)]);
        let c = check_interleaving(&f, &g, &q(1, 1), Strategy::Exhaustive, Budget::default())
            .unwrap()
            .unwrap();
        for b in [q(3, 2), q(2, 1), q(7, 1)] {
            let w = widen_certificate(&f, &g, &c, &b).unwrap();
            assert!(verify_certificate(&f, &g, &w).unwrap(), "b = {b}");
        }
    }
}

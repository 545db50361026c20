//! Interleaving certificates and distance bounds on the circle.
//!
//! The problem has the same shape as on the line, with one unknown per
//! deck translate of every nonzero Hom space. Feasibility changes only where
//! `p ± k a` meets `q ± k' a + mC`, so the critical values are `|x| / k`
//! for `x ∈ (P − P) + (C/4)ℤ`, `k ≤ 4`. That set is periodic, so the scan
//! stops at a bound and an infeasible last probe only bounds from below.
//! Because Fourier–Sato moves every endpoint by `±C/4`, the grid is the
//! same for `(F, G)` and for their transforms.

use std::collections::BTreeMap;

use super::morphism::Blocks;
use super::{
    circle_compose, circle_global_sections, circle_hom_tags, circle_thicken, circle_thicken_morphism,
    circle_thicken_tracked, CircleMorphism, CircleSheaf,
};
use crate::barcode::Bar;
use crate::error::{Error, Result};
use crate::hom::structure_constant;
use crate::interleave::{scan, scan_points, Budget, DistanceBounds, Gate, Probed, Strategy};
use crate::scalar::{ExtendedScalar, Scalar};
use crate::search::{self, BilinearSystem, Equation, Outcome};
use crate::thicken::restriction_coefficient;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleCertificate {
    pub a: Scalar,
    /// `K_a F → G`.
    pub f: CircleMorphism,
    /// `K_a G → F`.
    pub g: CircleMorphism,
}

fn deck(c: &Scalar, k: i64) -> Scalar {
    c * &Scalar::int(k)
}

fn translate(b: &Bar, by: &Scalar) -> Bar {
    Bar::new(b.interval.translate(by), b.degree)
}

fn check(f: &CircleSheaf, g: &CircleSheaf, a: &Scalar) -> Result<()> {
    f.same_circle(g)?;
    if a.is_negative() {
        return Err(Error::InvalidArgument(format!(
            "interleaving parameter must be non-negative, got {a}"
        )));
    }
    for x in [f, g] {
        if x.has_bands() {
            return Err(Error::UnsupportedBands(format!("interleavings of {x}")));
        }
    }
    Ok(())
}

/// `ρ_{0,2a}: K_a K_a F → F`, locating each summand through both steps.
fn double_restriction(x: &CircleSheaf, a: &Scalar) -> Result<CircleMorphism> {
    let (kx, px, mx) = circle_thicken_tracked(x, a);
    let (kkx, q, mq) = circle_thicken_tracked(&kx, a);
    let p = x.characteristic();
    let two_a = a + a;
    let mut blocks = Blocks::new();
    for (k, bar) in x.spirals().iter().enumerate() {
        let r = restriction_coefficient(bar, &two_a) % p;
        if r != 0 {
            blocks.insert((q[px[k]], k, -(mx[k] + mq[px[k]])), r);
        }
    }
    CircleMorphism::new(kkx, x.clone(), blocks)
}

/// Both interleaving identities as exact morphism equalities.
pub fn verify_circle_certificate(f: &CircleSheaf, g: &CircleSheaf, cert: &CircleCertificate) -> Result<bool> {
    let a = &cert.a;
    check(f, g, a)?;
    let (kf, kg) = (circle_thicken(f, a), circle_thicken(g, a));
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
    let lhs_f = circle_compose(&circle_thicken_morphism(&cert.f, a)?, &cert.g)?;
    let lhs_g = circle_compose(&circle_thicken_morphism(&cert.g, a)?, &cert.f)?;
    Ok(lhs_f == double_restriction(f, a)? && lhs_g == double_restriction(g, a)?)
}

type Var = (usize, usize, i64);

struct Layout {
    kf: CircleSheaf,
    kg: CircleSheaf,
    f_vars: Vec<Var>,
    g_vars: Vec<Var>,
    system: BilinearSystem,
}

fn vars(src: &CircleSheaf, tgt: &CircleSheaf) -> Vec<Var> {
    let c = src.circumference();
    let mut out = Vec::new();
    for (i, x) in src.spirals().iter().enumerate() {
        for (j, y) in tgt.spirals().iter().enumerate() {
            out.extend(circle_hom_tags(x, y, c).into_iter().map(|k| (i, j, k)));
        }
    }
    out
}

/// `g ∘ K_a f = ρ_{0,2a}` on `x`, with `f: K_a x → y` and `g: K_a y → x`.
fn identities(
    x: &CircleSheaf,
    kx: &CircleSheaf,
    y: &CircleSheaf,
    a: &Scalar,
    f_vars: &[Var],
    g_index: &BTreeMap<Var, usize>,
    swap: bool,
) -> Result<Vec<Equation>> {
    let p = x.characteristic();
    let c = x.circumference();
    let (kkx, q, mq) = circle_thicken_tracked(kx, a);
    let (ky, py, my) = circle_thicken_tracked(y, a);
    let mut eqs: BTreeMap<Var, Equation> = BTreeMap::new();
    for (u, &(i, j, k)) in f_vars.iter().enumerate() {
        // K_a of the generator (i, j, k).
        let (src, mid, k1) = (q[i], py[j], k + my[j] - mq[i]);
        let lo = (mid, 0, i64::MIN);
        let hi = (mid, usize::MAX, i64::MAX);
        for (&(_, l, k2), &v) in g_index.range(lo..=hi) {
            let b = translate(&ky.spirals()[mid], &deck(c, k1));
            let z = translate(&x.spirals()[l], &deck(c, k1 + k2));
            let s = structure_constant(&kkx.spirals()[src], &b, &z, p);
            if s != 0 {
                let term = if swap { (v, u, s) } else { (u, v, s) };
                eqs.entry((src, l, k1 + k2)).or_default().terms.push(term);
            }
        }
    }
    for (&key, &r) in double_restriction(x, a)?.blocks() {
        eqs.entry(key).or_default().rhs = r;
    }
    Ok(eqs.into_values().collect())
}

fn layout(f: &CircleSheaf, g: &CircleSheaf, a: &Scalar) -> Result<Layout> {
    let (kf, kg) = (circle_thicken(f, a), circle_thicken(g, a));
    let f_vars = vars(&kf, g);
    let g_vars = vars(&kg, f);
    let index = |vs: &[Var]| -> BTreeMap<Var, usize> { vs.iter().enumerate().map(|(k, &v)| (v, k)).collect() };
    let (f_index, g_index) = (index(&f_vars), index(&g_vars));
    let mut equations = identities(f, &kf, g, a, &f_vars, &g_index, false)?;
    equations.extend(identities(g, &kg, f, a, &g_vars, &f_index, true)?);
    let system = BilinearSystem {
        characteristic: f.characteristic(),
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

fn checked(f: &CircleSheaf, g: &CircleSheaf, cert: CircleCertificate) -> Result<CircleCertificate> {
    if !verify_circle_certificate(f, g, &cert)? {
        return Err(Error::Internal(format!(
            "search produced an unverifiable circle certificate at a = {}",
            cert.a
        )));
    }
    Ok(cert)
}

fn solve(f: &CircleSheaf, g: &CircleSheaf, a: &Scalar, cap: usize) -> Result<Option<(Blocks, Blocks, Layout)>> {
    let lay = layout(f, g, a)?;
    Ok(match search::solve(&lay.system, cap)? {
        Outcome::Infeasible => None,
        Outcome::Feasible { f: fv, g: gv } => {
            let fb = lay.f_vars.iter().copied().zip(fv).collect();
            let gb = lay.g_vars.iter().copied().zip(gv).collect();
            Some((fb, gb, lay))
        }
    })
}

fn exhaustive(f: &CircleSheaf, g: &CircleSheaf, a: &Scalar, budget: Budget) -> Result<Option<CircleCertificate>> {
    let Some((fb, gb, lay)) = solve(f, g, a, budget.cap)? else {
        return Ok(None);
    };
    let cert = CircleCertificate {
        a: a.clone(),
        f: CircleMorphism::new(lay.kf, g.clone(), fb)?,
        g: CircleMorphism::new(lay.kg, f.clone(), gb)?,
    };
    checked(f, g, cert).map(Some)
}

/// Blocks of the single-spiral problem `x` against `y`.
fn pair_solution(x: Option<&Bar>, y: Option<&Bar>, like: &CircleSheaf, a: &Scalar) -> Result<Option<(Blocks, Blocks)>> {
    let single = |b: Option<&Bar>| {
        CircleSheaf::spirals_only(like.circumference().clone(), like.characteristic(), b.into_iter().cloned().collect())
    };
    Ok(solve(&single(x)?, &single(y)?, a, usize::MAX)?.map(|(fb, gb, _)| (fb, gb)))
}

/// Block-diagonal search over a maximum matching of solvable spiral pairs.
fn matching(f: &CircleSheaf, g: &CircleSheaf, a: &Scalar) -> Result<Option<CircleCertificate>> {
    let (nf, ng) = (f.spirals().len(), g.spirals().len());
    let mut sols: BTreeMap<(usize, usize), (Blocks, Blocks)> = BTreeMap::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nf + ng];
    for (i, x) in f.spirals().iter().enumerate() {
        for (j, y) in g.spirals().iter().enumerate() {
            if let Some(s) = pair_solution(Some(x), Some(y), f, a)? {
                sols.insert((i, j), s);
                adj[i].push(j);
            }
        }
        if pair_solution(Some(x), None, f, a)?.is_some() {
            adj[i].push(ng + i);
        }
    }
    for (j, y) in g.spirals().iter().enumerate() {
        if pair_solution(None, Some(y), f, a)?.is_some() {
            adj[nf + j].push(j);
        }
        adj[nf + j].extend((0..nf).map(|i| ng + i));
    }
    let partner = crate::interleave::max_matching(&adj, ng + nf);
    if partner.iter().any(Option::is_none) {
        return Ok(None);
    }
    let (kf, pf, _) = circle_thicken_tracked(f, a);
    let (kg, pg, _) = circle_thicken_tracked(g, a);
    let mut fb = Blocks::new();
    let mut gb = Blocks::new();
    for i in 0..nf {
        let j = partner[i].expect("perfect matching");
        if j < ng {
            // Single-spiral sheaves keep normalized lifts, so only the
            // indices need relabeling.
            let (sf, sg) = &sols[&(i, j)];
            fb.extend(sf.iter().map(|(&(_, _, k), &v)| ((pf[i], j, k), v)));
            gb.extend(sg.iter().map(|(&(_, _, k), &v)| ((pg[j], i, k), v)));
        }
    }
    let cert = CircleCertificate {
        a: a.clone(),
        f: CircleMorphism::new(kf, g.clone(), fb)?,
        g: CircleMorphism::new(kg, f.clone(), gb)?,
    };
    checked(f, g, cert).map(Some)
}

/// Search for a certificate at `a`; `None` from the exhaustive strategy is
/// a proof of infeasibility.
pub fn check_circle_interleaving(
    f: &CircleSheaf,
    g: &CircleSheaf,
    a: &Scalar,
    strategy: Strategy,
    budget: Budget,
) -> Result<Option<CircleCertificate>> {
    check(f, g, a)?;
    match strategy {
        Strategy::Matching => matching(f, g, a),
        Strategy::Exhaustive => exhaustive(f, g, a, budget),
    }
}

pub fn circle_probe(f: &CircleSheaf, g: &CircleSheaf, a: &Scalar, budget: Budget) -> Result<Probed<CircleCertificate>> {
    if let Some(c) = check_circle_interleaving(f, g, a, Strategy::Matching, budget)? {
        return Ok(Probed::Feasible(c));
    }
    match exhaustive(f, g, a, budget) {
        Ok(Some(c)) => Ok(Probed::Feasible(c)),
        Ok(None) => Ok(Probed::Infeasible),
        Err(Error::Capacity { .. }) => Ok(Probed::Unknown),
        Err(e) => Err(e),
    }
}

/// Finite distance forces isomorphic global sections.
pub fn circle_finite_gate(f: &CircleSheaf, g: &CircleSheaf) -> Gate {
    if circle_global_sections(f) == circle_global_sections(g) {
        Gate::Pass
    } else {
        Gate::Infinite
    }
}

/// Largest parameter the scan examines: the circumference plus the longest
/// lift. Unchanged by Fourier–Sato only up to the lengths it alters, so
/// callers comparing transforms should pass an explicit common bound.
pub fn circle_scan_bound(f: &CircleSheaf, g: &CircleSheaf) -> Scalar {
    let longest = f
        .spirals()
        .iter()
        .chain(g.spirals())
        .filter_map(|b| b.interval.length())
        .max()
        .unwrap_or_else(Scalar::zero);
    f.circumference() + &longest
}

/// `{0} ∪ {|x| / k ≤ bound : x ∈ (P − P) + (C/4)ℤ, k = 1, …, 4}`.
pub fn circle_critical_values(f: &CircleSheaf, g: &CircleSheaf, bound: &Scalar) -> Vec<Scalar> {
    let q = f.circumference() / &Scalar::int(4);
    let mut pts: Vec<Scalar> = f.spirals().iter().chain(g.spirals()).flat_map(|b| b.interval.finite_endpoints().cloned()).collect();
    pts.sort();
    pts.dedup();
    let mut residues: Vec<Scalar> = Vec::new();
    for x in &pts {
        for y in &pts {
            residues.push(super::reduce(&(x - y), &q));
        }
    }
    residues.sort();
    residues.dedup();
    let top = bound * &Scalar::int(4);
    let mut out = vec![Scalar::zero()];
    for r in &residues {
        let mut x = r.clone();
        while x <= top {
            for k in 1..=4 {
                let v = &x / &Scalar::int(k);
                if &v <= bound {
                    out.push(v);
                }
            }
            x = x + &q;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Two-sided bounds, scanning up to `bound` (default
/// [`circle_scan_bound`]). Sheaves with bands pass only the gate.
pub fn circle_distance(
    f: &CircleSheaf,
    g: &CircleSheaf,
    budget: Budget,
    bound: Option<Scalar>,
) -> Result<DistanceBounds<CircleCertificate>> {
    f.same_circle(g)?;
    if circle_finite_gate(f, g) == Gate::Infinite {
        return Ok(DistanceBounds::infinite(true));
    }
    check(f, g, &Scalar::zero())?;
    let bound = bound.unwrap_or_else(|| circle_scan_bound(f, g));
    let points = scan_points(&circle_critical_values(f, g, &bound));
    let last = points.last().expect("scan has a final point").a.clone();
    let out = scan(&points, |a| circle_probe(f, g, a, budget))?;
    if out.upper == ExtendedScalar::PosInf && out.exact {
        // Only the line's last cell is unbounded; here it is one more cell.
        return Ok(DistanceBounds {
            lower: ExtendedScalar::Finite(last),
            upper: ExtendedScalar::PosInf,
            exact: false,
            witness: None,
        });
    }
    Ok(out)
}

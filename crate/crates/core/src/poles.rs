//! S-matrix core poles: the roots of `1 - V0 Q0(q)`, their classification,
//! mirror symmetry, and continuation along a parameter.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::{Parameter, SeparableModel};
use crate::poly::Polynomial;
use crate::units::ComplexMomentum;

/// `|Re q|` below this counts as lying on the imaginary axis.
pub const AXIS_TOL: f64 = 1e-7;
/// Two tracks closer than this have collided.
pub const COLLISION_TOL: f64 = 1e-6;
/// A bracket must dip below this pairwise distance to contain a collision.
pub const BRACKET_COLLISION_TOL: f64 = 1e-4;
/// Smallest parameter step the trajectory bisection may take.
pub const MIN_STEP: f64 = 1e-9;
const MATCH_FRACTION: f64 = 0.2;
const MAX_SAMPLES: usize = 200_000;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PoleClass {
    Bound,
    ComplexEnergyBoundPair,
    Virtual,
    Resonance,
    Antiresonance,
}

impl PoleClass {
    pub fn classify(q: Complex64) -> Self {
        let upper = q.im > 0.0;
        if q.re.abs() < AXIS_TOL {
            if upper {
                Self::Bound
            } else {
                Self::Virtual
            }
        } else if upper {
            Self::ComplexEnergyBoundPair
        } else if q.re > 0.0 {
            Self::Resonance
        } else {
            Self::Antiresonance
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Bound => "bound",
            Self::ComplexEnergyBoundPair => "complex-bound",
            Self::Virtual => "virtual",
            Self::Resonance => "resonance",
            Self::Antiresonance => "antiresonance",
        }
    }
}

impl fmt::Display for PoleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleRecord {
    pub q: ComplexMomentum,
    pub energy: Complex64,
    pub class: PoleClass,
    /// `|1 - V0 Q0(q)|`
    pub residual: f64,
    /// Part of a multiple-root cluster.
    pub multiplicity_flag: bool,
}

/// Numerator of `1 - V0 Q0(q)` after clearing the resolvent denominator.
pub fn core_pole_polynomial(model: &SeparableModel) -> Result<Polynomial> {
    let q0 = model.resolvent();
    if q0.denominator().degree() <= q0.numerator().degree() {
        return Err(Error::NotRational);
    }
    Ok(q0.denominator() - &q0.numerator().scale(Complex64::new(model.v0, 0.0)))
}

/// `1 - V0 Q0` with both resolvent polynomials in factored form, which keeps
/// full relative accuracy next to resolvent poles and near-cancelling zeros.
struct CoreFunction<'a> {
    model: &'a SeparableModel,
    numerator_roots: Option<Vec<Complex64>>,
}

impl<'a> CoreFunction<'a> {
    fn new(model: &'a SeparableModel) -> Self {
        let numerator = model.resolvent().numerator();
        let numerator_roots = match numerator.degree() {
            0 => Some(Vec::new()),
            _ => numerator
                .roots()
                .ok()
                .filter(|rs| rs.iter().all(|r| !r.clustered))
                .map(|rs| rs.into_iter().map(|r| r.value).collect()),
        };
        Self { model, numerator_roots }
    }

    fn numerator(&self, q: Complex64) -> Complex64 {
        let n = self.model.resolvent().numerator();
        match &self.numerator_roots {
            Some(roots) => roots.iter().fold(n.leading(), |acc, &z| acc * (q - z)),
            None => n.eval(q),
        }
    }

    /// `(D - V0 N, |1 - V0 Q0|)`
    fn eval(&self, q: Complex64) -> (Complex64, f64) {
        let d = self.model.resolvent().denominator_factored(q);
        let g = d - self.model.v0 * self.numerator(q);
        (g, (g / d).norm())
    }

    /// A root shared with the resolvent denominator, where `1 - V0 Q0` has no zero.
    fn is_removable(&self, q: Complex64) -> bool {
        let q0 = self.model.resolvent();
        q0.denominator_factored(q).norm() < 1e-8 * q0.denominator().eval_abs(q)
    }

    /// Newton steps from `q`, keeping the iterate with the smallest residual.
    fn polish(&self, poly: &Polynomial, q: Complex64) -> (Complex64, f64) {
        let slope = poly.derivative();
        let (mut best, mut best_res) = (q, self.eval(q).1);
        let mut z = q;
        for _ in 0..4 {
            let ds = slope.eval(z);
            if ds == Complex64::new(0.0, 0.0) {
                break;
            }
            z -= self.eval(z).0 / ds;
            let r = self.eval(z).1;
            if !r.is_finite() {
                break;
            }
            if r < best_res {
                best = z;
                best_res = r;
            }
        }
        (best, best_res)
    }
}

/// Classified core poles ordered by `Im q` descending, then `Re q` ascending.
pub fn find_poles(model: &SeparableModel) -> Result<Vec<PoleRecord>> {
    let poly = core_pole_polynomial(model)?;
    let mut out = Vec::with_capacity(poly.degree());
    let core = CoreFunction::new(model);
    for root in poly.roots()? {
        let (q, residual) = if core.is_removable(root.value) {
            // the ratio is meaningless there; report the polynomial backward error
            (root.value, poly.backward_error(root.value))
        } else if root.clustered {
            (root.value, core.eval(root.value).1)
        } else {
            core.polish(&poly, root.value)
        };
        out.push(PoleRecord {
            q: ComplexMomentum::new(q.re, q.im)?,
            energy: 0.5 * q * q,
            class: PoleClass::classify(q),
            residual,
            multiplicity_flag: root.clustered,
        });
    }
    out.sort_by(|x, y| y.q.im().total_cmp(&x.q.im()).then(x.q.re().total_cmp(&y.q.re())));
    Ok(out)
}

/// Zeros of `S1`, the complex conjugates of the poles.
pub fn s_matrix_zeros(poles: &[PoleRecord]) -> Vec<Complex64> {
    poles.iter().map(|p| p.q.value().conj()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorCheck {
    pub symmetric: bool,
    pub max_mismatch: f64,
}

/// Worst distance in a greedy closest-pair matching of `points` onto `images`.
fn multiset_mismatch(points: &[Complex64], images: &[Complex64]) -> f64 {
    let n = points.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (i, p) in points.iter().enumerate() {
        for (j, q) in images.iter().enumerate() {
            pairs.push(((p - q).norm(), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut used_p = vec![false; n];
    let mut used_q = vec![false; n];
    let mut worst: f64 = 0.0;
    for (d, i, j) in pairs {
        if !used_p[i] && !used_q[j] {
            used_p[i] = true;
            used_q[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}

/// Is the pole multiset closed under `q -> -q*`?
pub fn check_mirror_symmetry(poles: &[PoleRecord], tol: f64) -> MirrorCheck {
    let qs: Vec<Complex64> = poles.iter().map(|p| p.q.value()).collect();
    let mirrored: Vec<Complex64> = qs.iter().map(|q| -q.conj()).collect();
    let max_mismatch = multiset_mismatch(&qs, &mirrored);
    MirrorCheck { symmetric: max_mismatch <= tol, max_mismatch }
}

/// Is the pole-energy multiset closed under complex conjugation?
pub fn check_energy_pairing(poles: &[PoleRecord], tol: f64) -> MirrorCheck {
    let es: Vec<Complex64> = poles.iter().map(|p| p.energy).collect();
    let conj: Vec<Complex64> = es.iter().map(|e| e.conj()).collect();
    let max_mismatch = multiset_mismatch(&es, &conj);
    MirrorCheck { symmetric: max_mismatch <= tol, max_mismatch }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySample {
    pub value: f64,
    /// `poles[k]` belongs to track `k`.
    pub poles: Vec<PoleRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Collision {
    pub value: f64,
    pub tracks: (usize, usize),
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleTrajectory {
    pub parameter: Parameter,
    pub samples: Vec<TrajectorySample>,
    pub collisions: Vec<Collision>,
}

fn median_spacing(points: &[PoleRecord]) -> f64 {
    let mut d: Vec<f64> = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            d.push((points[i].q.value() - points[j].q.value()).norm());
        }
    }
    if d.is_empty() {
        return f64::INFINITY;
    }
    d.sort_by(f64::total_cmp);
    d[d.len() / 2]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    out.push(perm.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            out.push(perm.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Reorders `next` so that track `k` continues `prev[k]`, minimizing total
/// displacement. Returns the reordered poles and the worst single move.
fn match_tracks(prev: &[PoleRecord], next: Vec<PoleRecord>, perms: &[Vec<usize>]) -> (Vec<PoleRecord>, f64) {
    let n = prev.len();
    let dist = |i: usize, j: usize| (prev[i].q.value() - next[j].q.value()).norm();
    let assignment: Vec<usize> = if !perms.is_empty() {
        perms
            .iter()
            .min_by(|x, y| {
                let cx: f64 = x.iter().enumerate().map(|(i, &j)| dist(i, j)).sum();
                let cy: f64 = y.iter().enumerate().map(|(i, &j)| dist(i, j)).sum();
                cx.total_cmp(&cy)
            })
            .expect("at least one permutation")
            .clone()
    } else {
        let mut taken = vec![false; n];
        (0..n)
            .map(|i| {
                let j = (0..n)
                    .filter(|&j| !taken[j])
                    .min_by(|&x, &y| dist(i, x).total_cmp(&dist(i, y)))
                    .expect("one candidate per track");
                taken[j] = true;
                j
            })
            .collect()
    };
    let worst = assignment.iter().enumerate().map(|(i, &j)| dist(i, j)).fold(0.0, f64::max);
    let ordered = assignment.iter().map(|&j| next[j]).collect();
    (ordered, worst)
}

fn model_at(model: &SeparableModel, which: Parameter, value: f64) -> Result<SeparableModel> {
    model.with_parameter(which, value).map_err(|e| match e {
        Error::ParameterDomain(_) => Error::DomainExit { name: which.name(), value },
        other => other,
    })
}

fn min_pair_distance(model: &SeparableModel, which: Parameter, value: f64) -> Result<f64> {
    let m = model_at(model, which, value)?;
    let roots = core_pole_polynomial(&m)?.root_values()?;
    let mut best = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            best = best.min((roots[i] - roots[j]).norm());
        }
    }
    Ok(best)
}

/// Golden-section minimum of `f` on `[lo, hi]`, stopping at width `tol`.
fn golden_min<F: FnMut(f64) -> Result<f64>>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)> {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

fn refine_tol(lo: f64, hi: f64) -> f64 {
    1e-13 * lo.abs().max(hi.abs()).max(1.0)
}

/// Follows every core pole as one parameter moves from `start` to `stop`.
pub fn trace_trajectory(
    model: &SeparableModel,
    which: Parameter,
    start: f64,
    stop: f64,
    steps: usize,
) -> Result<PoleTrajectory> {
    if steps < 2 {
        return Err(Error::InvalidInput("a trajectory needs at least 2 steps".into()));
    }
    if !(start.is_finite() && stop.is_finite()) {
        return Err(Error::InvalidInput("trajectory bounds must be finite".into()));
    }
    let grid: Vec<f64> = (0..steps).map(|i| start + (stop - start) * i as f64 / (steps - 1) as f64).collect();
    let first = find_poles(&model_at(model, which, start)?)?;
    let perms = if first.len() <= 7 { permutations(first.len()) } else { Vec::new() };
    let mut samples = vec![TrajectorySample { value: start, poles: first }];

    for &goal in &grid[1..] {
        let mut target = goal;
        loop {
            let prev = samples.last().expect("trajectory has a first sample");
            let poles = find_poles(&model_at(model, which, target)?)?;
            let (ordered, worst) = match_tracks(&prev.poles, poles, &perms);
            if worst > MATCH_FRACTION * median_spacing(&prev.poles) {
                let half = 0.5 * (target - prev.value);
                if half.abs() < MIN_STEP || samples.len() >= MAX_SAMPLES {
                    return Err(Error::MatchingAmbiguity { at: target });
                }
                target = prev.value + half;
                continue;
            }
            samples.push(TrajectorySample { value: target, poles: ordered });
            if target == goal {
                break;
            }
            target = goal;
        }
    }

    let collisions = detect_collisions(model, which, &samples)?;
    Ok(PoleTrajectory { parameter: which, samples, collisions })
}

fn detect_collisions(model: &SeparableModel, which: Parameter, samples: &[TrajectorySample]) -> Result<Vec<Collision>> {
    let n = samples[0].poles.len();
    let mut found: Vec<Collision> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d: Vec<f64> = samples.iter().map(|s| (s.poles[i].q.value() - s.poles[j].q.value()).norm()).collect();
            for k in 0..d.len() {
                let left = if k > 0 { d[k - 1] } else { f64::INFINITY };
                let right = if k + 1 < d.len() { d[k + 1] } else { f64::INFINITY };
                if d[k] > left || d[k] > right {
                    continue;
                }
                let (value, distance) = if d[k] < COLLISION_TOL {
                    (samples[k].value, d[k])
                } else {
                    let lo = samples[k.saturating_sub(1)].value;
                    let hi = samples[(k + 1).min(d.len() - 1)].value;
                    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
                    golden_min(|v| min_pair_distance(model, which, v), lo, hi, refine_tol(lo, hi))?
                };
                if distance < COLLISION_TOL
                    && !found.iter().any(|c| c.tracks == (i, j) && (c.value - value).abs() < 1e-6)
                {
                    found.push(Collision { value, tracks: (i, j), distance });
                }
            }
        }
    }
    found.sort_by(|x, y| x.value.total_cmp(&y.value).then(x.tracks.cmp(&y.tracks)));
    Ok(found)
}

/// Parameter value inside `bracket` where two core poles coincide.
pub fn find_collision(model: &SeparableModel, which: Parameter, bracket: (f64, f64)) -> Result<f64> {
    let (lo, hi) = if bracket.0 <= bracket.1 { bracket } else { (bracket.1, bracket.0) };
    const SCAN: usize = 64;
    let xs: Vec<f64> = (0..=SCAN).map(|i| lo + (hi - lo) * i as f64 / SCAN as f64).collect();
    let ds = xs.iter().map(|&x| min_pair_distance(model, which, x)).collect::<Result<Vec<f64>>>()?;
    let k = (0..ds.len()).min_by(|&x, &y| ds[x].total_cmp(&ds[y])).expect("scan is nonempty");
    let a = xs[k.saturating_sub(1)];
    let b = xs[(k + 1).min(SCAN)];
    let (value, distance) = golden_min(|v| min_pair_distance(model, which, v), a, b, refine_tol(a, b))?;
    let (value, distance) = if ds[k] < distance { (xs[k], ds[k]) } else { (value, distance) };
    if distance >= BRACKET_COLLISION_TOL {
        return Err(Error::NoCollisionInBracket { lo, hi, closest: distance });
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundCensus {
    pub count: usize,
    /// At most one bound pole at a time.
    pub unique: bool,
}

pub fn bound_state_census(poles: &[PoleRecord]) -> BoundCensus {
    let count = poles.iter().filter(|p| p.class == PoleClass::Bound).count();
    BoundCensus { count, unique: count <= 1 }
}

/// Largest simultaneous bound-pole count along a trajectory.
pub fn trajectory_bound_census(trajectory: &PoleTrajectory) -> BoundCensus {
    let count = trajectory.samples.iter().map(|s| bound_state_census(&s.poles).count).max().unwrap_or(0);
    BoundCensus { count, unique: count <= 1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formfactor::FormFactor;
    use crate::models::{make_model, ModelKind};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tr(v0: f64, a: f64, b: f64) -> SeparableModel {
        make_model(ModelKind::TimeReversalSymmetric, v0, a, b).unwrap()
    }

    fn parity(v0: f64, a: f64, b: f64) -> SeparableModel {
        make_model(ModelKind::ParityPseudoHermitian, v0, a, b).unwrap()
    }

    fn count(poles: &[PoleRecord], class: PoleClass) -> usize {
        poles.iter().filter(|p| p.class == class).count()
    }

    #[test]
    fn polynomial_degrees() {
        assert_eq!(core_pole_polynomial(&tr(1.0, 1.0, 0.5)).unwrap().degree(), 4);
        assert_eq!(core_pole_polynomial(&parity(1.0, 0.5, 0.5)).unwrap().degree(), 5);
    }

    #[test]
    fn weak_coupling_roots_approach_resolvent_poles() {
        let mut roots = core_pole_polynomial(&tr(1e-10, 1.0, 0.5)).unwrap().root_values().unwrap();
        roots.sort_by(|x, y| y.im.total_cmp(&x.im));
        let expect = [c(0.0, 0.0), c(0.0, -0.5), c(0.0, -1.0), c(0.0, -1.0)];
        for (r, e) in roots.iter().zip(expect) {
            assert!((r - e).norm() < 1e-4, "{r} vs {e}");
        }
    }

    #[test]
    fn tr_repulsive_structure() {
        let poles = find_poles(&tr(1.0, 1.0, 0.5)).unwrap();
        assert_eq!(count(&poles, PoleClass::Virtual), 2);
        assert_eq!(count(&poles, PoleClass::Resonance), 1);
        assert_eq!(count(&poles, PoleClass::Antiresonance), 1);
        assert!(poles.iter().all(|p| p.residual < 1e-10));
        let r = poles.iter().find(|p| p.class == PoleClass::Resonance).unwrap();
        assert!((r.q.value() - c(1.4847, -0.1297)).norm() < 1e-3);
    }

    #[test]
    fn tr_attractive_has_one_bound_state() {
        let poles = find_poles(&tr(-1.0, 1.0, 0.5)).unwrap();
        assert_eq!(bound_state_census(&poles), BoundCensus { count: 1, unique: true });
        assert!((poles[0].q.value() - c(0.0, 1.269)).norm() < 1e-3);
    }

    #[test]
    fn parity_structure_and_ordering() {
        let poles = find_poles(&parity(1.0, 0.5, 0.5)).unwrap();
        assert_eq!(poles.len(), 5);
        assert_eq!(count(&poles, PoleClass::Resonance), 2);
        assert_eq!(count(&poles, PoleClass::Antiresonance), 2);
        assert_eq!(count(&poles, PoleClass::Virtual), 1);
        for w in poles.windows(2) {
            assert!(w[0].q.im() >= w[1].q.im());
        }
        assert!(check_mirror_symmetry(&poles, 1e-9).symmetric);
        assert!(check_energy_pairing(&poles, 1e-9).symmetric);
    }

    #[test]
    fn shifted_model_breaks_mirror_symmetry() {
        let m = SeparableModel::shifted_tr(1.0, 1.0, 0.5, c(0.3, 0.1)).unwrap();
        let check = check_mirror_symmetry(&find_poles(&m).unwrap(), 1e-9);
        assert!(!check.symmetric && check.max_mismatch > 0.01, "{check:?}");
    }

    #[test]
    fn classification_boundaries() {
        assert_eq!(PoleClass::classify(c(5e-8, 1.0)), PoleClass::Bound);
        assert_eq!(PoleClass::classify(c(-5e-8, -1.0)), PoleClass::Virtual);
        assert_eq!(PoleClass::classify(c(0.1, -1.0)), PoleClass::Resonance);
        assert_eq!(PoleClass::classify(c(-0.1, -1.0)), PoleClass::Antiresonance);
        assert_eq!(PoleClass::classify(c(-0.1, 0.2)), PoleClass::ComplexEnergyBoundPair);
    }

    #[test]
    fn zeros_are_conjugate_poles() {
        let poles = find_poles(&tr(1.0, 1.0, 0.5)).unwrap();
        let zeros = s_matrix_zeros(&poles);
        let m = tr(1.0, 1.0, 0.5);
        for z in zeros {
            let s = crate::amplitudes::s1(&m, ComplexMomentum::new(z.re, z.im).unwrap(), false).unwrap();
            assert!(s.norm() < 1e-8, "{z}: {s}");
        }
    }

    #[test]
    fn parity_collision_near_quoted_value() {
        let a = find_collision(&parity(1.0, 1.0, 1.0), Parameter::A, (4.0, 5.0)).unwrap();
        assert!((a - 4.55).abs() < 0.05, "{a}");
    }

    #[test]
    fn planted_collision_recovered() {
        let a: f64 = 1.0;
        let lorentz = FormFactor::simple(c((2.0 * a.powi(3) / PI).sqrt(), 0.0), &[c(0.0, a), c(0.0, -a)]).unwrap();
        let m = SeparableModel::custom(0.05, lorentz.clone(), lorentz).unwrap();
        let v = find_collision(&m, Parameter::V0, (0.01, 0.1)).unwrap();
        let exact = (5.0 * 5f64.sqrt() - 11.0) / 4.0;
        assert!((v - exact).abs() < 1e-9, "{v} vs {exact}");
    }

    #[test]
    fn no_collision_reported() {
        let r = find_collision(&tr(1.0, 1.0, 0.5), Parameter::V0, (0.5, 1.5));
        assert!(matches!(r, Err(Error::NoCollisionInBracket { .. })), "{r:?}");
    }

    #[test]
    fn tr_trajectory_collides_at_zero_strength() {
        let t = trace_trajectory(&tr(1.0, 1.0, 0.5), Parameter::V0, -1.0, 1.0, 21).unwrap();
        assert!(t.samples.iter().all(|s| s.poles.len() == 4));
        assert!(!t.collisions.is_empty());
        assert!(t.collisions.iter().any(|c| c.value.abs() < 0.05), "{:?}", t.collisions);
        assert!(trajectory_bound_census(&t).unique);
    }

    #[test]
    fn parity_trajectory_crosses_real_axis() {
        let t = trace_trajectory(&parity(1.0, 0.1, 1.0), Parameter::A, 0.1, 0.6, 11).unwrap();
        let first = &t.samples[0].poles;
        let last = &t.samples.last().unwrap().poles;
        let crossed = (0..first.len()).any(|k| {
            first[k].class == PoleClass::ComplexEnergyBoundPair
                && matches!(last[k].class, PoleClass::Resonance | PoleClass::Antiresonance)
        });
        assert!(crossed);
    }

    #[test]
    fn domain_exit_is_reported() {
        let r = trace_trajectory(&tr(1.0, 1.0, 0.5), Parameter::B, 0.5, -0.5, 5);
        assert!(matches!(r, Err(Error::DomainExit { name: "b", .. })), "{r:?}");
    }
}

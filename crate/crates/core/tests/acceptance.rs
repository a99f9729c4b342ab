//! Acceptance criteria 1 to 11. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_2_PI, PI};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unicrit::cli::presets::preset;
use unicrit::pullback::{backward_contraction_profile, dyadic_grid, pull_back_along_orbit, DiskEnclosure, ScaleProfile};
use unicrit::returns::{bc_integral, close_return_ratios, return_staircase, staircase_grid, ExponentMode};
use unicrit::series::{convergence_exponent, forward_series, level_sum, poincare_truncation, Traversal};
use unicrit::tree::{enumerate_preimage_tree, TreeConfig, Visit};
use unicrit::{Complex64, UnicriticalMap};

// Pinned tolerances.
const C1_REL_TOL: f64 = 1e-9;
const C1_MAX_RUNTIME: Duration = Duration::from_secs(10);
const C2_REL_TOL: f64 = 1e-9;
const C2_GROWTH_TOL: f64 = 1e-3;
const C3_REL_TOL: f64 = 1e-12;
const C4_TARGET: f64 = 1.0;
const C4_TOL: f64 = 0.05;
const C5_RESIDUAL_TOL: f64 = 1e-9;
const C5_FD_REL_TOL: f64 = 1e-4;
const C6_SLACK: f64 = 0.0;
const C7_REL_SLACK: f64 = 1e-12;
const C8_RESIDUAL_TOL: f64 = 1e-8;
const C8_SYMMETRY_TOL: f64 = 1e-10;
const C8_BREAKPOINT_REL_TOL: f64 = 1e-12;
const C9_MAX_SPREAD: f64 = 100.0;
const C10_REL_TOL: f64 = 1e-12;

// Workload sizes.
const FEIGENBAUM_N: usize = 4096;
const C9_PROFILE_CUTOFF: usize = 1024;
const C9_PER_INTERVAL: usize = 8;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Self { pass, detail }
    }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(f)
}

/// `Σ_{z ∈ f^{-n}(w)} |Df^n(z)|^{-t}` by plain recursion on square roots.
fn brute_level_sum(c: f64, w: Complex64, t: f64, n: usize) -> f64 {
    fn walk(c: f64, w: Complex64, t: f64, left: usize, deriv: f64) -> f64 {
        if left == 0 {
            return deriv.powf(-t);
        }
        let r = (w - c).sqrt();
        walk(c, r, t, left - 1, deriv * 2.0 * r.norm()) + walk(c, -r, t, left - 1, deriv * 2.0 * r.norm())
    }
    walk(c, w, t, n, 1.0)
}

fn criterion_1() -> Outcome {
    let f = UnicriticalMap::quadratic(-2.0);
    let cfg = TreeConfig::default();
    let mut worst: f64 = 0.0;
    for n in 1..=16 {
        let s1 = level_sum(&f, zero(), 1.0, n, &cfg).unwrap();
        let s2 = level_sum(&f, zero(), 2.0, n, &cfg).unwrap();
        let closed1 = 1.0 / (2f64.powi(n as i32) * (PI * 2f64.powi(-(n as i32) - 1)).sin());
        let closed2 = 2f64.powi(-(n as i32) - 1);
        worst = worst.max(rel_err(s1, closed1)).max(rel_err(s2, closed2));
        if n <= 10 {
            worst = worst
                .max(rel_err(s1, brute_level_sum(-2.0, zero(), 1.0, n)))
                .max(rel_err(s2, brute_level_sum(-2.0, zero(), 2.0, n)));
        }
    }
    let start = Instant::now();
    single_threaded(|| level_sum(&f, zero(), 1.0, 16, &cfg).unwrap());
    let elapsed = start.elapsed();
    Outcome::new(
        worst <= C1_REL_TOL && elapsed <= C1_MAX_RUNTIME,
        format!(
            "Chebyshev S_n(0,1), S_n(0,2), n=1..16: max rel err {worst:.2e} (tol {C1_REL_TOL:e}); n=16 single-threaded in {:.2} s (limit {} s)",
            elapsed.as_secs_f64(),
            C1_MAX_RUNTIME.as_secs()
        ),
    )
}

fn criterion_2() -> Outcome {
    let f = UnicriticalMap::quadratic(-2.0);
    let cfg = TreeConfig::default();
    let mut worst: f64 = 0.0;
    for n in 1..=16 {
        let p = poincare_truncation(&f, zero(), 2.0, n, Traversal::Exhaustive, &cfg).unwrap();
        worst = worst.max(rel_err(p.partial, 1.5 - 2f64.powi(-(n as i32) - 1)));
    }
    let p1 = poincare_truncation(&f, zero(), 1.0, 16, Traversal::Exhaustive, &cfg).unwrap();
    let mut worst_growth: f64 = 0.0;
    for n in 10..=16 {
        let grown = p1.level_sums[n];
        worst_growth = worst_growth.max((grown - FRAC_2_PI).abs());
    }
    let mut prev = poincare_truncation(&f, zero(), 1.0, 9, Traversal::Exhaustive, &cfg).unwrap().partial;
    for n in 10..=16 {
        let next = poincare_truncation(&f, zero(), 1.0, n, Traversal::Exhaustive, &cfg).unwrap().partial;
        worst_growth = worst_growth.max((next - prev - FRAC_2_PI).abs());
        prev = next;
    }
    Outcome::new(
        worst <= C2_REL_TOL && worst_growth <= C2_GROWTH_TOL,
        format!(
            "P_N(0,2) N=1..16: max rel err {worst:.2e} (tol {C2_REL_TOL:e}); P_N(0,1) growth per level N=10..16 off 2/pi by at most {worst_growth:.2e} (tol {C2_GROWTH_TOL:e})"
        ),
    )
}

fn criterion_3() -> Outcome {
    let f = UnicriticalMap::quadratic(-2.0);
    let mut worst: f64 = 0.0;
    for n in 0..=40 {
        let f1 = forward_series(&f, 1.0, n).unwrap().partial;
        let f2 = forward_series(&f, 2.0, n).unwrap().partial;
        worst = worst
            .max(rel_err(f1, 2.0 - 2f64.powi(-(n as i32))))
            .max(rel_err(f2, (1.0 - 4f64.powi(-(n as i32) - 1)) / 0.75));
    }
    Outcome::new(
        worst <= C3_REL_TOL,
        format!("Chebyshev F_N(1), F_N(2), N=0..40: max rel err {worst:.2e} (tol {C3_REL_TOL:e})"),
    )
}

fn criterion_4() -> Outcome {
    let f = UnicriticalMap::quadratic(-2.0);
    let est = convergence_exponent(&f, zero(), 14, 0.5, 2.0, 1e-10, &TreeConfig::default()).unwrap();
    Outcome::new(
        (est.root - C4_TARGET).abs() <= C4_TOL,
        format!("Chebyshev pressure root at depth 14: t* = {:.6} (want {C4_TARGET} +- {C4_TOL})", est.root),
    )
}

fn random_parameter(rng: &mut ChaCha8Rng, max_modulus: f64) -> Complex64 {
    let r = max_modulus * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..2.0 * PI))
}

/// Central difference of `|Df^n|` at `z`. The step is halved from
/// `1e-6 · max(1, |z|)` down to `1e-13 · max(1, |z|)` and the estimate
/// taken where two successive halvings agree best.
fn finite_difference(f: &UnicriticalMap, z: Complex64, n: usize) -> f64 {
    let estimate = |h: f64| {
        let h = (z.re + h) - z.re;
        (f.apply_n(z + h, n) - f.apply_n(z - h, n)).norm() / (2.0 * h)
    };
    let mut h = 1e-6 * z.norm().max(1.0);
    let mut prev = estimate(h);
    let mut best = (f64::INFINITY, prev);
    while h > 1e-13 * z.norm().max(1.0) {
        h *= 0.5;
        let next = estimate(h);
        let change = (next - prev).abs() / next.abs();
        if change < best.0 {
            best = (change, next);
        }
        prev = next;
    }
    best.1
}

/// Double-double arithmetic for residuals that are not swamped by the
/// rounding of the check itself.
#[derive(Clone, Copy)]
struct Dd(f64, f64);

impl Dd {
    fn from(x: f64) -> Self {
        Dd(x, 0.0)
    }

    fn add(self, o: Dd) -> Dd {
        let s = self.0 + o.0;
        let bb = s - self.0;
        let err = (self.0 - (s - bb)) + (o.0 - bb);
        let lo = err + self.1 + o.1;
        let hi = s + lo;
        Dd(hi, lo - (hi - s))
    }

    fn neg(self) -> Dd {
        Dd(-self.0, -self.1)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.0 * o.0;
        let err = self.0.mul_add(o.0, -p);
        let lo = err + self.0 * o.1 + self.1 * o.0;
        let hi = p + lo;
        Dd(hi, lo - (hi - p))
    }

    fn value(self) -> f64 {
        self.0 + self.1
    }
}

#[derive(Clone, Copy)]
struct DdComplex(Dd, Dd);

impl DdComplex {
    fn from(z: Complex64) -> Self {
        DdComplex(Dd::from(z.re), Dd::from(z.im))
    }

    fn add(self, o: DdComplex) -> Self {
        DdComplex(self.0.add(o.0), self.1.add(o.1))
    }

    fn mul(self, o: DdComplex) -> Self {
        DdComplex(self.0.mul(o.0).add(self.1.mul(o.1).neg()), self.0.mul(o.1).add(self.1.mul(o.0)))
    }
}

/// `|f^n(z) - w|` evaluated in double-double.
fn round_trip_residual(f: &UnicriticalMap, z: Complex64, n: usize, w: Complex64) -> f64 {
    let c = DdComplex::from(f.parameter());
    let mut x = DdComplex::from(z);
    for _ in 0..n {
        let mut p = x;
        for _ in 1..f.degree() {
            p = p.mul(x);
        }
        x = p.add(c);
    }
    let diff = x.add(DdComplex::from(-w));
    Complex64::new(diff.0.value(), diff.1.value()).norm()
}

fn criterion_5() -> Outcome {
    const MAX_DEPTH: usize = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = TreeConfig::default();
    let mut count_ok = true;
    // worst scaled residual per degree and depth
    let mut worst = [[0.0f64; MAX_DEPTH + 1]; 2];
    let mut worst_fd: f64 = 0.0;
    let mut sampled = 0;
    let mut errors = Vec::new();
    for i in 0..20 {
        let d: u32 = if i % 2 == 0 { 2 } else { 3 };
        let c = random_parameter(&mut rng, 1.5);
        let w = random_parameter(&mut rng, 1.0);
        let f = UnicriticalMap::new(d, c).unwrap();
        let mut nodes = Vec::new();
        let summary = enumerate_preimage_tree(&f, w, MAX_DEPTH, &cfg, |node| {
            nodes.push((node.depth, node.point, node.log_abs_deriv));
            Visit::Descend
        });
        let summary = match summary {
            Ok(s) => s,
            Err(e) => {
                errors.push(format!("c={c}: {e}"));
                continue;
            }
        };
        count_ok &= summary.per_depth.iter().enumerate().all(|(n, &k)| k == u64::from(d).pow(n as u32));
        let row = &mut worst[(d - 2) as usize];
        for &(n, z, _) in &nodes {
            row[n] = row[n].max(round_trip_residual(&f, z, n, w) / w.norm().max(1.0));
        }
        let leaves: Vec<_> = nodes.iter().filter(|node| node.0 >= 1).collect();
        for _ in 0..5 {
            let &&(n, z, log_deriv) = &leaves[rng.gen_range(0..leaves.len())];
            worst_fd = worst_fd.max(rel_err(finite_difference(&f, z, n), log_deriv.exp()));
            sampled += 1;
        }
    }
    let deepest_ok = |row: &[f64; MAX_DEPTH + 1]| row.iter().take_while(|&&r| r <= C5_RESIDUAL_TOL).count() - 1;
    let residual_ok = worst.iter().all(|row| row.iter().all(|&r| r <= C5_RESIDUAL_TOL));
    Outcome::new(
        errors.is_empty() && count_ok && residual_ok && worst_fd <= C5_FD_REL_TOL,
        format!(
            "20 maps, d in {{2,3}}, depths 0..=12: counts d^n {}; worst round-trip residual d=2 {:.2e}, d=3 {:.2e} (tol {C5_RESIDUAL_TOL:e}; holds through depth {} for d=2, {} for d=3); {sampled} derivative samples max rel err {worst_fd:.2e} (tol {C5_FD_REL_TOL:e}){}",
            if count_ok { "ok" } else { "WRONG" },
            worst[0][MAX_DEPTH],
            worst[1][MAX_DEPTH],
            deepest_ok(&worst[0]),
            deepest_ok(&worst[1]),
            if errors.is_empty() { String::new() } else { format!("; errors: {errors:?}") }
        ),
    )
}

/// Lifts a path through one inverse step, starting from `start` and
/// following the nearest root.
fn lift(f: &UnicriticalMap, path: &[Complex64], start: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(path.len());
    let mut current = start;
    for (i, &w) in path.iter().enumerate() {
        if i > 0 {
            current = f
                .preimages(w)
                .roots
                .into_iter()
                .min_by(|a, b| (a - current).norm().total_cmp(&(b - current).norm()))
                .unwrap();
        }
        out.push(current);
    }
    out
}

fn criterion_6() -> Outcome {
    const CHAINS: usize = 50;
    const SAMPLES: usize = 100;
    const PATH_POINTS: usize = 400;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut built = 0;
    let mut outside = 0;
    let mut checks = 0;
    let mut order_violations = 0;
    let mut errors = Vec::new();
    while built < CHAINS {
        let d = rng.gen_range(2..=3);
        let f = UnicriticalMap::new(d, random_parameter(&mut rng, 1.5)).unwrap();
        let n = rng.gen_range(1..=8);
        let orbit = f.iterate(random_parameter(&mut rng, 1.0), n);
        if orbit.escaped_at.is_some() {
            continue;
        }
        let radius = 10f64.powf(rng.gen_range(-3.0..-0.5));
        let target = DiskEnclosure::new(orbit.points[n], radius);
        let chain = match pull_back_along_orbit(&f, &target, &orbit, n) {
            Ok(chain) => chain,
            Err(e) => {
                errors.push(e.to_string());
                built += 1;
                continue;
            }
        };
        built += 1;
        if chain.valid {
            for level in 0..=n {
                let (lo, hi) = chain.diam_bounds_at_level(level);
                if lo > hi {
                    order_violations += 1;
                }
            }
        }
        for s in 0..SAMPLES {
            let edge = target.boundary_point(2.0 * PI * s as f64 / SAMPLES as f64);
            let mut path: Vec<Complex64> = (0..PATH_POINTS)
                .map(|i| target.center + (edge - target.center) * (i as f64 / (PATH_POINTS - 1) as f64))
                .collect();
            for level in (0..n).rev() {
                path = lift(&f, &path, orbit.points[level]);
                let enclosure = chain.outer_at_level(level);
                checks += 1;
                let end = *path.last().unwrap();
                if (end - enclosure.center).norm() > enclosure.radius * (1.0 + C6_SLACK) {
                    outside += 1;
                }
            }
        }
    }
    Outcome::new(
        outside == 0 && order_violations == 0 && errors.is_empty(),
        format!(
            "{CHAINS} chains, {SAMPLES} boundary samples each: {outside} of {checks} back-samples outside the outer enclosure; {order_violations} diam_lower > diam_upper{}",
            if errors.is_empty() { String::new() } else { format!("; errors: {errors:?}") }
        ),
    )
}

fn cross_scale_violations(profile: &ScaleProfile) -> (usize, usize) {
    let mut pairs = 0;
    let mut bad = 0;
    for a in &profile.entries {
        for b in &profile.entries {
            if !(a.delta < b.delta) || !a.r_hi.is_finite() || !b.r_lo.is_finite() {
                continue;
            }
            pairs += 1;
            if a.r_hi * (1.0 + C7_REL_SLACK) < a.delta / b.delta * b.r_lo {
                bad += 1;
            }
        }
    }
    (pairs, bad)
}

fn criterion_7(profiles: &[(&str, &ScaleProfile)]) -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for (name, p) in profiles {
        let (pairs, bad) = cross_scale_violations(p);
        pass &= bad == 0 && pairs > 0;
        detail.push(format!("{name}: {bad} of {pairs} finite pairs violate"));
    }
    Outcome::new(pass, format!("R_hi(d) >= (d/d')R_lo(d'): {}", detail.join("; ")))
}

/// Running minima of `|f^m(0)|^d` for `m = 1..=n`.
fn running_minima(f: &UnicriticalMap, n: usize) -> Vec<(usize, f64)> {
    let d = f.degree() as i32;
    let mut z = zero();
    let mut best = f64::INFINITY;
    let mut out = Vec::new();
    for m in 1..=n {
        z = z.powu(d as u32) + f.parameter();
        let beta = z.norm().powi(d);
        if beta < best {
            best = beta;
            out.push((m, beta));
        }
    }
    out
}

fn criterion_8(f: &UnicriticalMap) -> Outcome {
    let (delta_min, delta_max) = (1e-6, 0.5);
    let st = return_staircase(f, delta_min, delta_max, FEIGENBAUM_N).unwrap();
    let minima = running_minima(f, FEIGENBAUM_N);
    // n(δ) = m_k on [β_k, β_{k-1}), with β_{-1} = ∞.
    let expected: Vec<(usize, f64, f64)> = minima
        .iter()
        .enumerate()
        .map(|(k, &(m, beta))| (m, beta, if k == 0 { f64::INFINITY } else { minima[k - 1].1 }))
        .filter(|&(_, lo, hi)| lo <= delta_max && hi > delta_min)
        .map(|(m, lo, hi)| (m, lo.max(delta_min), hi.min(delta_max)))
        .collect();
    let ns: Vec<usize> = st.returns.iter().map(|r| r.n).collect();
    let oracle_ns: Vec<usize> = expected.iter().map(|e| e.0).collect();
    let breakpoints_ok = st.returns.len() == expected.len()
        && st.returns.iter().zip(&expected).all(|(r, e)| {
            rel_err(r.delta_lo, e.1) <= C8_BREAKPOINT_REL_TOL && rel_err(r.delta_hi, e.2) <= C8_BREAKPOINT_REL_TOL
        });
    let powers = ns.iter().all(|n| n.is_power_of_two());
    let increasing = ns.windows(2).all(|w| w[0] < w[1]);
    let accepted: Vec<_> = st.returns.iter().filter(|r| r.accepted()).collect();
    let worst_residual = accepted.iter().filter_map(|r| r.residual).fold(0.0, f64::max);
    let worst_symmetry = accepted.iter().filter_map(|r| r.symmetry_spread).fold(0.0, f64::max);
    Outcome::new(
        !ns.is_empty()
            && ns == oracle_ns
            && breakpoints_ok
            && powers
            && increasing
            && worst_residual <= C8_RESIDUAL_TOL
            && worst_symmetry <= C8_SYMMETRY_TOL,
        format!(
            "Feigenbaum staircase n = {ns:?} (oracle {oracle_ns:?}, breakpoints {}); {} of {} accepted, max residual {worst_residual:.2e} (tol {C8_RESIDUAL_TOL:e}), max symmetry spread {worst_symmetry:.2e} (tol {C8_SYMMETRY_TOL:e})",
            if breakpoints_ok { "match" } else { "DIFFER" },
            accepted.len(),
            st.returns.len()
        ),
    )
}

fn criterion_9(f: &UnicriticalMap) -> (Outcome, ScaleProfile) {
    let st = return_staircase(f, 1e-6, 0.5, FEIGENBAUM_N).unwrap();
    let grid = staircase_grid(&st, 4, C9_PER_INTERVAL);
    let profile = backward_contraction_profile(f, &grid, C9_PROFILE_CUTOFF).unwrap();
    let mut first = st.clone();
    first.returns.retain(|r| r.delta_lo < r.delta_hi);
    first.returns.truncate(4);
    let ratios = close_return_ratios(&first, &profile, 1.0).unwrap();
    let values: Vec<f64> = ratios.iter().filter_map(|r| r.ratio).collect();
    let finite = values.len() == 4 && values.iter().all(|v| v.is_finite() && *v > 0.0);
    let spread = values.iter().copied().fold(0.0, f64::max) / values.iter().copied().fold(f64::INFINITY, f64::min);
    let shown: Vec<String> = values.iter().map(|v| format!("{v:.3}")).collect();
    (
        Outcome::new(
            finite && spread <= C9_MAX_SPREAD,
            format!(
                "Feigenbaum, t=1, first 4 intervals: ratios [{}], spread {spread:.3} (limit {C9_MAX_SPREAD}); profile cutoff {C9_PROFILE_CUTOFF}",
                shown.join(", ")
            ),
        ),
        profile,
    )
}

struct Monotonicity {
    checks: usize,
    worst: f64,
}

impl Monotonicity {
    fn new() -> Self {
        Self { checks: 0, worst: 0.0 }
    }

    /// Records `later <= earlier` up to the relative tolerance.
    fn nonincreasing(&mut self, earlier: f64, later: f64) {
        self.checks += 1;
        if later > earlier {
            let excess = if earlier == 0.0 { f64::INFINITY } else { (later - earlier) / earlier.abs() };
            self.worst = self.worst.max(excess);
        }
    }

    fn ok(&self) -> bool {
        self.worst <= C10_REL_TOL
    }

    fn describe(&self) -> String {
        format!("{} checks, worst relative excess {:.2e}", self.checks, self.worst)
    }
}

fn criterion_10(golden: &[(&str, UnicriticalMap, &ScaleProfile)]) -> Outcome {
    let cfg = TreeConfig::default();
    let t_grid: Vec<f64> = (1..=30).map(|i| 0.1 * i as f64).collect();
    let mut in_n = Monotonicity::new();
    let mut p_in_t = Monotonicity::new();
    let mut f_in_t = Monotonicity::new();
    let mut bc_in_t = Monotonicity::new();
    let mut skipped = Vec::new();
    for (name, f, profile) in golden {
        match poincare_truncation(f, zero(), 1.0, 12, Traversal::Exhaustive, &cfg) {
            Err(e) => skipped.push(format!("{name} series ({e})")),
            Ok(_) => {
                for &t in &t_grid {
                    let mut prev = 0.0;
                    for n in 0..=12 {
                        let p = poincare_truncation(f, zero(), t, n, Traversal::Exhaustive, &cfg).unwrap().partial;
                        in_n.nonincreasing(p, prev);
                        prev = p;
                    }
                }
                for n in 0..=12 {
                    for pair in t_grid.windows(2) {
                        let p = |t| poincare_truncation(f, zero(), t, n, Traversal::Exhaustive, &cfg).unwrap().partial;
                        p_in_t.nonincreasing(p(pair[0]), p(pair[1]));
                        let fw = |t| forward_series(f, t, n).unwrap().partial;
                        f_in_t.nonincreasing(fw(pair[0]), fw(pair[1]));
                    }
                }
            }
        }
        for mode in [ExponentMode::T, ExponentMode::TOverD] {
            for pair in t_grid.windows(2) {
                let a = bc_integral(profile, pair[0], mode).unwrap();
                let b = bc_integral(profile, pair[1], mode).unwrap();
                bc_in_t.nonincreasing(a, b);
            }
        }
    }
    let names: Vec<&str> = golden.iter().map(|g| g.0).collect();
    Outcome::new(
        in_n.ok() && p_in_t.ok() && f_in_t.ok() && bc_in_t.ok(),
        format!(
            "golden configs {names:?} (tol {C10_REL_TOL:e}): P_N nondecreasing in N: {}; P_N nonincreasing in t: {}; F_N nonincreasing in t: {}; bc_integral nonincreasing in t: {}{}",
            in_n.describe(),
            p_in_t.describe(),
            f_in_t.describe(),
            bc_in_t.describe(),
            if skipped.is_empty() { String::new() } else { format!("; not applicable: {}", skipped.join(", ")) }
        ),
    )
}

fn run_cli(args: &[&str], threads: usize) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_unicrit"))
        .args(args)
        .args(["--threads", &threads.to_string()])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn criterion_11() -> Outcome {
    let runs: [&[&str]; 4] = [
        &["theoremb", "--set", "preset=feigenbaum", "--format", "csv"],
        &["theoremb", "--set", "preset=feigenbaum", "--format", "json"],
        &["rprofile", "--set", "preset=feigenbaum", "--set", "n_profile=512", "--set", "delta_count=20", "--format", "csv"],
        &["rprofile", "--set", "preset=feigenbaum", "--set", "n_profile=512", "--set", "delta_count=20", "--format", "json"],
    ];
    let mut differing = Vec::new();
    for args in runs {
        let reference = run_cli(args, 1);
        for threads in [2, 8] {
            if run_cli(args, threads) != reference {
                differing.push(format!("{} with {threads} threads", args.join(" ")));
            }
        }
    }
    Outcome::new(
        differing.is_empty(),
        format!(
            "theoremb and rprofile (csv, json) at 1, 2 and 8 threads: {}",
            if differing.is_empty() { "byte-identical".to_string() } else { format!("differ: {differing:?}") }
        ),
    )
}

fn main() {
    let feigenbaum = preset("feigenbaum", 2, zero()).unwrap();
    let chebyshev = UnicriticalMap::quadratic(-2.0);
    let basilica = UnicriticalMap::quadratic(-1.0);
    let grid = dyadic_grid(1.0, 40);
    let feigenbaum_profile = backward_contraction_profile(&feigenbaum, &grid, FEIGENBAUM_N).unwrap();
    let chebyshev_profile = backward_contraction_profile(&chebyshev, &grid, FEIGENBAUM_N).unwrap();
    let basilica_profile = backward_contraction_profile(&basilica, &grid, C9_PROFILE_CUTOFF).unwrap();

    let mut results = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6()),
    ];
    let (c9, staircase_profile) = criterion_9(&feigenbaum);
    results.push((
        7,
        criterion_7(&[("dyadic grid, N=4096", &feigenbaum_profile), ("staircase grid, N=1024", &staircase_profile)]),
    ));
    results.push((8, criterion_8(&feigenbaum)));
    results.push((9, c9));
    results.push((
        10,
        criterion_10(&[
            ("chebyshev", chebyshev, &chebyshev_profile),
            ("basilica", basilica, &basilica_profile),
            ("feigenbaum", feigenbaum, &feigenbaum_profile),
        ]),
    ));
    results.push((11, criterion_11()));

    let mut failed = 0;
    for (k, r) in &results {
        println!("criterion {k:>2} {}  {}", if r.pass { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Acceptance criteria; prints one PASS/FAIL line each and exits nonzero if
//! any fails. Reference values are recomputed here from closed forms rather
//! than taken from the library wherever that is possible.

use std::time::{Duration, Instant};

use ibreg_core::binary::{BinaryModel, MuD};
use ibreg_core::gaussian::{CdibX1X2Y, CdibX1YX2, GaussianVector, RATE_CAP};
use ibreg_core::info::{compose_markov, Axis, Channel, JointPmf};
use ibreg_core::search::{
    check_inclusion, envelope_value, evaluate_twcib, upper_concave_envelope, CurvePoint, MuIntSearch, Problem,
    RegionCurve, RoundSchedule,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn h2(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

fn star(a: f64, b: f64) -> f64 {
    a * (1.0 - b) + b * (1.0 - a)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const CONFIGS: [f64; 4] = [0.05, 0.1, 0.2, 0.3];

fn binary_endpoints() -> Outcome {
    let m = BinaryModel::new(0.1, 0.1).map_err(|e| e.to_string())?;
    let mu = MuD::new(m);
    let at0 = mu.eval(0.0).map_err(|e| e.to_string())?;
    let top = h2(0.1);
    let at_top = mu.eval(top).map_err(|e| e.to_string())?;
    let ed_top = m.mu_ed(top).map_err(|e| e.to_string())?;
    let (want0, want_top) = (1.0 - h2(0.18), 1.0 - h2(0.1));
    let err = [(at0 - want0).abs(), (at_top - want_top).abs(), (ed_top - want_top).abs()];
    let worst = err.iter().cloned().fold(0.0, f64::max);
    ensure(worst <= 1e-9, || format!("max endpoint error {worst:.3e}"))?;
    Ok(format!("mu_d(0) = {at0:.9}, mu_d(h2(q)) = {at_top:.9}, max err {worst:.1e}"))
}

fn primal_dual() -> Outcome {
    let mut worst = 0.0f64;
    for &p in &CONFIGS {
        for &q in &CONFIGS {
            let m = BinaryModel::new(p, q).map_err(|e| e.to_string())?;
            let mu = MuD::new(m);
            let dual = ibreg_core::binary::DualOracle::new(m);
            for i in 0..50 {
                let r = h2(q) * i as f64 / 49.0;
                let a = mu.eval(r).map_err(|e| e.to_string())?;
                let b = dual.eval(r).map_err(|e| e.to_string())?;
                worst = worst.max((a - b).abs());
            }
        }
    }
    ensure(worst <= 1e-6, || format!("max |primal - dual| = {worst:.3e}"))?;
    Ok(format!("16 configs x 50 rates, max |primal - dual| = {worst:.2e}"))
}

fn sandwich_and_shape() -> Outcome {
    for &p in &CONFIGS {
        for &q in &CONFIGS {
            let m = BinaryModel::new(p, q).map_err(|e| e.to_string())?;
            let mu = MuD::new(m);
            let top = h2(q);
            let base = 1.0 - h2(star(p, q));
            let slope = (h2(star(p, q)) - h2(p)) / top;
            let n = 500;
            let mut vals = Vec::with_capacity(n);
            for i in 0..n {
                let r = top * i as f64 / (n - 1) as f64;
                let v = mu.eval(r).map_err(|e| e.to_string())?;
                ensure(v >= base + slope * r - 1e-9 && v <= base + r + 1e-9, || {
                    format!("(p, q) = ({p}, {q}), R = {r}: {v} outside affine bounds")
                })?;
                vals.push(v);
            }
            for w in vals.windows(3) {
                ensure(w[1] >= w[0] - 1e-12, || format!("(p, q) = ({p}, {q}): decreasing"))?;
                ensure(w[2] - 2.0 * w[1] + w[0] <= 1e-9, || format!("(p, q) = ({p}, {q}): not concave"))?;
            }
        }
    }
    Ok("16 configs x 500 rates: nondecreasing, concave, within affine bounds".into())
}

fn cross_module() -> Outcome {
    let m = BinaryModel::new(0.1, 0.1).map_err(|e| e.to_string())?;
    let src = m.two_way_source().map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for i in 0..50 {
        let r = 0.005 + 0.49 * i as f64 / 49.0;
        let v1 = Channel::bsc(Axis::new("X1", 2), "V1", r).map_err(|e| e.to_string())?;
        let v2 = Channel::constant(vec![Axis::new("X2", 2), Axis::new("V1", 2)], "V2").map_err(|e| e.to_string())?;
        let s = RoundSchedule::new(Problem::TwoWay, Axis::new("X1", 2), Axis::new("X2", 2), vec![v1, v2])
            .map_err(|e| e.to_string())?;
        let pt = evaluate_twcib(&src, &s).map_err(|e| e.to_string())?;
        let g = m.g(r).map_err(|e| e.to_string())?;
        let f = m.f(r).map_err(|e| e.to_string())?;
        worst = worst.max((pt.r1 - g).abs()).max((pt.mu2.unwrap_or(f64::NAN) - (1.0 - h2(0.18) + f)).abs());
    }
    ensure(worst <= 1e-9, || format!("max deviation {worst:.3e}"))?;
    Ok(format!("50 crossovers, max deviation {worst:.1e}"))
}

fn gaussian_chain() -> Outcome {
    let m = CdibX1X2Y::new(0.8, 0.8).map_err(|e| e.to_string())?;
    let spot = m.mu(1.0, 1.0).map_err(|e| e.to_string())?;
    let want = 0.5 * (1.0f64 / (0.36 + 0.64 * 0.25 * (0.36 + 0.64 * 0.25))).log2();
    ensure((spot - want).abs() <= 1e-9, || format!("mu(1, 1) = {spot}, closed form {want}"))?;
    let v = m.vector().map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    let limit = m.mu_limit();
    for i in 0..20 {
        for j in 0..20 {
            let r1 = 4.0 * i as f64 / 19.0;
            let mu = 0.999 * limit * j as f64 / 19.0;
            let r2 = m.r2(r1, mu).map_err(|e| e.to_string())?;
            if r2 > 0.0 {
                worst = worst.max((m.mu(r1, r2).map_err(|e| e.to_string())? - mu).abs());
            }
        }
    }
    ensure(worst <= 1e-9, || format!("round-trip error {worst:.3e}"))?;
    // Critical rate: R2 = 0 suffices exactly there, checked on the covariance.
    let mut crit_err = 0.0f64;
    for mu in [0.05, 0.1, 0.2, 0.3] {
        let Some(c) = m.critical_r1(mu).map_err(|e| e.to_string())? else {
            return Err(format!("no critical rate at mu = {mu}"));
        };
        let noise = 2f64.powf(-2.0 * c) / (1.0 - 2f64.powf(-2.0 * c));
        let g: GaussianVector<f64> = v.with_linear("V1", &[("X1", 1.0)], noise).map_err(|e| e.to_string())?;
        let rel = g.mutual_information(&["Y"], &["V1"]).map_err(|e| e.to_string())?;
        crit_err = crit_err.max((rel - mu).abs()).max((m.r2_bracket(c, mu) - 1.0).abs());
    }
    ensure(crit_err <= 1e-9, || format!("critical-rate error {crit_err:.3e}"))?;
    Ok(format!("mu(1, 1) = {spot:.9}, round trip {worst:.1e}, critical rate {crit_err:.1e}"))
}

fn gaussian_outer_inner() -> Outcome {
    let m = CdibX1YX2::new(0.8, 0.6).map_err(|e| e.to_string())?;
    let zero = m.outer_point(0.0, 0.0).map_err(|e| e.to_string())?.mu_max;
    let inf = m.outer_point(RATE_CAP, RATE_CAP).map_err(|e| e.to_string())?.mu_max;
    let want_inf = 0.5 * (0.7696f64 / 0.2304).log2();
    ensure(zero.abs() <= 1e-6 && (inf - want_inf).abs() <= 1e-6, || format!("limits {zero}, {inf}"))?;
    let mut min_gap = f64::INFINITY;
    let (mut max_gap, mut at) = (0.0f64, (0.0, 0.0));
    for i in 0..20 {
        for j in 0..20 {
            let (r1, r2) = (1.5 * i as f64 / 19.0, 1.5 * j as f64 / 19.0);
            let outer = m.outer_frontier(r1, r2).map_err(|e| e.to_string())?;
            let inner = m.inner_bound(r1, r2).map_err(|e| e.to_string())?.mu;
            min_gap = min_gap.min(outer - inner);
            if outer - inner > max_gap {
                (max_gap, at) = (outer - inner, (r1, r2));
            }
        }
    }
    ensure(min_gap >= -1e-9, || format!("inner exceeds outer by {:.3e}", -min_gap))?;
    Ok(format!("limits 0 and {inf:.9}; 20x20 grid, outer - inner in [{min_gap:.1e}, {max_gap:.4}], widest at (R1, R2) = ({:.3}, {:.3})", at.0, at.1))
}

fn inclusion_chain() -> Outcome {
    let m = BinaryModel::new(0.1, 0.1).map_err(|e| e.to_string())?;
    let res = MuIntSearch::new(m).run(200_000, 2024).map_err(|e| e.to_string())?;
    let top = h2(0.1);
    let grid: Vec<f64> = (0..32).map(|i| top * i as f64 / 31.0).collect();
    let int = res.sample(&grid).map_err(|e| e.to_string())?;
    let curve = |method: &str, f: &dyn Fn(f64) -> f64| {
        let pts = grid.iter().map(|&r| CurvePoint { r, mu: f(r) }).collect();
        RegionCurve::new(serde_json::json!({"kind": "binary", "p": 0.1, "q": 0.1}), method, None, pts)
    };
    let mu = MuD::new(m);
    let d = curve("mu_d", &|r| mu.eval(r).unwrap());
    let ed = curve("mu_ed", &|r| m.mu_ed(r).unwrap());
    let it = curve("mu_int", &|r| envelope_value(&res.envelope, r).unwrap_or(res.envelope.last().unwrap().y));
    let upper = check_inclusion(&it, &ed, 1e-9).map_err(|e| e.to_string())?;
    let lower = check_inclusion(&d, &it, 1e-3).map_err(|e| e.to_string())?;
    ensure(upper.holds, || format!("mu_int above mu_ed by {:.3e} at R = {}", upper.worst.gap, upper.worst.r))?;
    ensure(lower.holds, || format!("mu_int below mu_d by {:.3e} at R = {}", lower.worst.gap, lower.worst.r))?;
    let (mut gain, mut at) = (f64::NEG_INFINITY, 0.0);
    for (p, q) in int.iter().zip(&d.points).skip(1).take(30) {
        if p.y - q.mu > gain {
            (gain, at) = (p.y - q.mu, p.x);
        }
    }
    ensure(gain >= 0.005, || format!("largest interior gain {gain:.4} < 0.005"))?;
    Ok(format!("budget 200000: mu_d - {:.1e} <= mu_int <= mu_ed; gain {gain:.4} at R = {at:.4}", lower.worst.gap.max(0.0)))
}

fn random_pmf(rng: &mut ChaCha8Rng, axes: Vec<Axis>) -> JointPmf<f64> {
    let n: usize = axes.iter().map(|a| a.card).product();
    let mut t: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    if rng.random::<f64>() < 0.2 {
        t[rng.random_range(0..n)] = 0.0;
    }
    let s: f64 = t.iter().sum();
    t.iter_mut().for_each(|x| *x /= s);
    JointPmf::new(axes, t).expect("normalized")
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let e = |x: ibreg_core::Error| x.to_string();
    for k in 0..1000 {
        let axes = vec![Axis::new("X", rng.random_range(2..5)), Axis::new("Y", rng.random_range(2..4)), Axis::new("Z", rng.random_range(2..4))];
        let p = random_pmf(&mut rng, axes);
        let whole = p.mutual_information(&["X"], &["Y", "Z"]).map_err(e)?;
        let parts = p.mutual_information(&["X"], &["Y"]).map_err(e)? + p.conditional_mutual_information(&["X"], &["Z"], &["Y"]).map_err(e)?;
        ensure((whole - parts).abs() <= 1e-9, || format!("pmf {k}: chain rule off by {:.3e}", whole - parts))?;
        let h = p.entropy(&["X", "Y", "Z"]).map_err(e)?;
        ensure(whole >= 0.0 && parts >= 0.0 && h >= 0.0, || format!("pmf {k}: negative measure"))?;
        let card = rng.random_range(2..4);
        let x = p.axis("X").map_err(e)?.clone();
        let mut rows: Vec<f64> = (0..x.card * card).map(|_| rng.random::<f64>() + 1e-3).collect();
        for row in rows.chunks_mut(card) {
            let s: f64 = row.iter().sum();
            row.iter_mut().for_each(|v| *v /= s);
        }
        let ch = Channel::new(vec![x], Axis::new("V", card), rows).map_err(e)?;
        let j = compose_markov(&p, &ch).map_err(e)?;
        let back = j.marginalize(&["X", "Y", "Z"]).map_err(e)?;
        ensure(back.table() == p.table(), || format!("pmf {k}: composition changed the source marginal"))?;
        let leak = j.conditional_mutual_information(&["V"], &["Y", "Z"], &["X"]).map_err(e)?;
        ensure(leak <= 1e-12, || format!("pmf {k}: Markov leak {leak:.3e}"))?;
        let dpi = j.mutual_information(&["V"], &["Y"]).map_err(e)? - j.mutual_information(&["X"], &["Y"]).map_err(e)?;
        ensure(dpi <= 1e-12, || format!("pmf {k}: data processing violated by {dpi:.3e}"))?;
    }
    for k in 0..100 {
        let n = rng.random_range(2..120);
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
        let env = upper_concave_envelope(&pts).map_err(e)?;
        let again = upper_concave_envelope(&env.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>()).map_err(e)?;
        ensure(again == env, || format!("cloud {k}: envelope not idempotent"))?;
        for &(x, _) in &pts {
            let mut brute = f64::NEG_INFINITY;
            for &(xa, ya) in &pts {
                for &(xb, yb) in &pts {
                    if xa <= x && x <= xb {
                        let y = if xb == xa { ya.max(yb) } else { ya + (yb - ya) * (x - xa) / (xb - xa) };
                        brute = brute.max(y);
                    }
                }
            }
            let v = envelope_value(&env, x).ok_or_else(|| format!("cloud {k}: point outside span"))?;
            ensure((v - brute).abs() <= 1e-12, || format!("cloud {k}: envelope {v} vs chords {brute}"))?;
        }
        for w in env.windows(3) {
            let s1 = (w[1].y - w[0].y) / (w[1].x - w[0].x);
            let s2 = (w[2].y - w[1].y) / (w[2].x - w[1].x);
            ensure(w[0].x < w[1].x && s1 > s2, || format!("cloud {k}: slopes not strictly decreasing"))?;
        }
    }
    let mut worst = 0.0f64;
    for &p in &CONFIGS {
        for &q in &CONFIGS {
            let m = BinaryModel::new(p, q).map_err(e)?;
            for i in 1..20 {
                let r = 0.5 * i as f64 / 20.0;
                let hstep = 1e-6;
                let fd_g = (m.g(r + hstep).map_err(e)? - m.g(r - hstep).map_err(e)?) / (2.0 * hstep);
                let fd_f = (m.f(r + hstep).map_err(e)? - m.f(r - hstep).map_err(e)?) / (2.0 * hstep);
                worst = worst.max((fd_g - m.g_prime(r).map_err(e)?).abs()).max((fd_f - m.f_prime(r).map_err(e)?).abs());
            }
        }
    }
    ensure(worst <= 1e-5, || format!("derivative mismatch {worst:.3e}"))?;
    Ok(format!("1000 pmfs, 100 clouds, derivative max deviation {worst:.1e}"))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("binary endpoints", Duration::from_secs(1), binary_endpoints),
        ("primal-dual agreement", Duration::from_secs(30), primal_dual),
        ("affine sandwich and shape", Duration::from_secs(5), sandwich_and_shape),
        ("cross-module oracle", Duration::from_secs(5), cross_module),
        ("gaussian X1-X2-Y closed form", Duration::from_secs(1), gaussian_chain),
        ("gaussian X1-Y-X2 outer vs inner", Duration::from_secs(60), gaussian_outer_inner),
        ("interactive inclusion chain", Duration::from_secs(300), inclusion_chain),
        ("property suites", Duration::from_secs(30), property_suites),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > *budget => Err(format!("{msg}; took {took:.2?} > {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {} PASS  {name} ({took:.2?}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL  {name} ({took:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Exit-gate checks. Each criterion prints one PASS/FAIL line with its
//! runtime; the process fails if any criterion outside `UNATTAINABLE` fails.

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use zeta_xray::gram::{
    audit_laws, classify_gram_range, count_n, find_zeros, gram_abscissa, van_de_lune_sigma0, z_extremum,
};
use zeta_xray::special::{BesselJ7Oracle, Hermite7Oracle, ZetaOracle};
use zeta_xray::xray::{
    real_axis_crossings, sheet_permutation, sigma_crossings, trace_parallel, xray, CurveKind, GridSpec, SingularityType,
};
use zeta_xray::zeta::{hardy_z, hardy_z_em, riemann_siegel_z, theta};
use zeta_xray::Rectangle;

const FIRST_ZEROS: [f64; 6] = [14.13, 21.02, 25.01, 30.42, 32.93, 37.58];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

type Check = fn() -> Outcome;

fn c1_first_zeros() -> Outcome {
    let r = find_zeros(10.0, 40.0).unwrap();
    let found: Vec<f64> = r.zeros.iter().map(|z| z.t).collect();
    let misses: Vec<String> = FIRST_ZEROS
        .iter()
        .zip(&found)
        .filter(|(want, got)| (*got - *want).abs() > 0.005)
        .map(|(want, got)| format!("{got:.4} vs {want} (off {:.4})", (got - want).abs()))
        .collect();
    // The listed values are the zeros cut to two decimals.
    let truncated =
        found.len() == 6 && FIRST_ZEROS.iter().zip(&found).all(|(w, g)| ((g * 100.0).floor() / 100.0 - w).abs() < 1e-9);
    let pass = found.len() == 6 && misses.is_empty();
    let detail = if pass {
        format!("{found:.4?}")
    } else {
        format!(
            "found {found:.4?}; outside +-0.005: {}; two-decimal truncation matches: {truncated}",
            misses.join(", ")
        )
    };
    outcome(pass, detail)
}

fn c2_counts() -> Outcome {
    let n50 = count_n(50.0).unwrap();
    let n200 = count_n(200.0).unwrap();
    let n100 = count_n(100.0).unwrap();
    let census = find_zeros(9.0, 100.0).unwrap();
    let pass = n50 == 10 && n200 == 79 && n100 == 29 && census.zeros.len() == 29 && census.is_complete();
    outcome(pass, format!("N(50)={n50} N(200)={n200} N(100)={n100} sign-change census={}", census.zeros.len()))
}

fn c3_gram_law() -> Outcome {
    let a = audit_laws(-1, 127).unwrap();
    let early: Vec<i64> = a.gram_violations.iter().map(|v| v.interval.index).filter(|&i| i < 125).collect();
    let count = |n: i64| a.classification.intervals.iter().find(|iv| iv.index == n).map(|iv| iv.zero_count);
    let pass = early.is_empty() && count(125) == Some(0) && count(126) == Some(2);
    outcome(
        pass,
        format!("violations before 125: {early:?}; (g125,g126) {:?} zeros, (g126,g127) {:?}", count(125), count(126)),
    )
}

fn c4_lehmer() -> Outcome {
    let (a, b) = (gram_abscissa(6707).unwrap(), gram_abscissa(6708).unwrap());
    let r = find_zeros(a, b).unwrap();
    let ts: Vec<f64> = r.zeros.iter().map(|z| z.t).collect();
    if ts.len() != 2 {
        return outcome(false, format!("expected two zeros in (g6707, g6708), found {ts:?}"));
    }
    let (t_rs, z_rs) = z_extremum(ts[0], ts[1], |t| Ok(hardy_z(t)?.value.re)).unwrap();
    let (t_em, z_em) = z_extremum(ts[0], ts[1], |t| Ok(hardy_z_em(t, 1e-12)?.value.re)).unwrap();
    let zeros_ok = (ts[0] - 7005.0629).abs() <= 0.005 && (ts[1] - 7005.1006).abs() <= 0.005;
    let max_ok = |t: f64, z: f64| (z.abs() - 0.0039675).abs() <= 5e-4 && (t - 7005.0819).abs() <= 0.01;
    outcome(
        zeros_ok && max_ok(t_rs, z_rs) && max_ok(t_em, z_em),
        format!(
            "zeros {:.4} {:.4}; max |Z| {:.7} at {:.4} (Euler-Maclaurin {:.7} at {:.4})",
            ts[0],
            ts[1],
            z_rs.abs(),
            t_rs,
            z_em.abs(),
            t_em
        ),
    )
}

fn c5_rosser() -> Outcome {
    let n0 = 13_999_525;
    let c = classify_gram_range(n0, n0 + 3).unwrap();
    let block = c.blocks.iter().find(|b| b.start_index == n0 && b.end_index == n0 + 2).copied();
    let next = c.intervals.iter().find(|iv| iv.index == n0 + 2).map(|iv| iv.zero_count);
    let Some(first) = c.zeros.zeros.first() else {
        return outcome(false, "no zeros in the span");
    };
    // S decreases between zeros and jumps up at each, so its minimum over the
    // span is the left limit at the first zero.
    let below = c.zeros.count_below + c.zeros.count_in(c.zeros.t_lo, first.t - 1e-9) as i64;
    let s_min = below as f64 - theta(first.t).unwrap() / PI - 1.0;
    let pass = block.map(|b| b.zero_count) == Some(0) && next == Some(3) && (s_min + 2.004138).abs() <= 5e-3;
    outcome(pass, format!("block {block:?}; (g{},g{}) holds {next:?}; min S = {s_min:.6}", n0 + 2, n0 + 3))
}

fn c6_sigma0() -> Outcome {
    let v = van_de_lune_sigma0(12).unwrap();
    let shown = format!("{v:.11}");
    outcome(shown == "1.19234733719", format!("sigma0 = {shown}"))
}

fn c7_line_numbering() -> Outcome {
    let oracle = ZetaOracle::default();
    let k_max = (2000.0 * 2f64.ln() / PI).floor() as i64;
    let traces: Vec<_> = (1..=k_max).into_par_iter().map(|k| trace_parallel(k, &oracle)).collect();
    let census = find_zeros(9.0, 2010.0).unwrap();
    let mut checked = 0;
    let mut bad = Vec::new();
    for tr in traces {
        let tr = tr.unwrap();
        let (Some(tc), Some(n)) = (tr.t_critical, tr.line_number) else { continue };
        if tr.zero.is_some() || tc > 2000.0 {
            continue;
        }
        checked += 1;
        let below = census.zeros.iter().filter(|z| z.t < tc).count() as i64;
        if n.rem_euclid(4) != 1 || (n + 3) / 4 != below {
            bad.push(format!("k={} N={n} census={below}", tr.k));
        }
    }
    outcome(checked >= 50 && bad.is_empty(), format!("{checked} zero-free parallels below T=2000; mismatches {bad:?}"))
}

fn c8_dual_method() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(8);
    let ts: Vec<f64> = (0..200).map(|_| rng.gen_range(50.0..1e5)).collect();
    let worst = ts
        .par_iter()
        .map(|&t| {
            let rs = riemann_siegel_z(t).unwrap().result.value.re;
            let em = hardy_z_em(t, 1e-10).unwrap().value.re;
            ((rs - em).abs() / (10.0 * t.powf(-0.75)), t)
        })
        .reduce(|| (0.0, 0.0), |a, b| if b.0 > a.0 { b } else { a });
    outcome(worst.0 <= 1.0, format!("worst |Z_EM - Z_RS| / (10 t^-3/4) = {:.3} at t = {:.1}", worst.0, worst.1))
}

fn c9_zeta_xray() -> Outcome {
    let rect = Rectangle::new(-30.0, 10.0, -10.0, 40.0).unwrap();
    let x = xray(Arc::new(ZetaOracle::default()), rect, GridSpec::default_for(&rect)).unwrap();
    let mut notes = Vec::new();

    // Thin lines cut the axis at the trivial zeros; the oval closing at the
    // pole s = 1 is not a crossing.
    let mut crossings: Vec<f64> = x
        .curves
        .iter()
        .filter(|c| c.kind == CurveKind::Thin)
        .flat_map(real_axis_crossings)
        .filter(|s| (s - 1.0).abs() > 0.01)
        .collect();
    crossings.sort_by(f64::total_cmp);
    crossings.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
    let want: Vec<f64> = (1..=14).rev().map(|n| -2.0 * n as f64).collect();
    let axis_ok = crossings.len() == want.len() && crossings.iter().zip(&want).all(|(a, b)| (a - b).abs() < 1e-6);
    if !axis_ok {
        notes.push(format!("thin axis crossings {crossings:.6?}"));
    }
    let attached = |c: &zeta_xray::xray::CurvePolyline, re: f64, im: f64| {
        c.attached_singularities.iter().any(|a| {
            a.kind == SingularityType::Zero && (a.point.re - re).abs() < 1e-3 && (a.point.im - im).abs() < 1e-3
        })
    };
    // The axis crossing at -2 belongs to the oval; the thin line numbered -2
    // is the one that meets line 0 at the first zero.
    let oval = x.curves.iter().any(|c| c.kind == CurveKind::Thin && c.closed && attached(c, -2.0, 0.0));
    let joined = oval
        && x.curves.iter().any(|c| {
            c.kind == CurveKind::Thin
                && c.line_numbers.contains(&-2)
                && c.line_numbers.contains(&0)
                && attached(c, 0.5, 14.1347)
        });
    if !joined {
        notes.push("no oval through -2, or lines -2 and 0 do not meet at the first zero".into());
    }

    let reference = find_zeros(10.0, 40.0).unwrap();
    let mut strip: Vec<f64> =
        x.zeros().filter(|z| (0.0..=1.0).contains(&z.point.re) && z.point.im > 0.0).map(|z| z.point.im).collect();
    strip.sort_by(f64::total_cmp);
    let strip_ok = strip.len() == 6 && strip.iter().zip(&reference.zeros).all(|(a, z)| (a - z.t).abs() <= 0.005);
    if !strip_ok {
        notes.push(format!("strip intersections {strip:.4?}"));
    }

    // Least-squares spacing of the parallels crossing each abscissa; the last
    // one sits just inside the right edge, where the curves end.
    let mut spacings = Vec::new();
    for sigma in [3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 9.99] {
        let mut ts: Vec<f64> = x
            .curves
            .iter()
            .filter(|c| c.kind == CurveKind::Thick)
            .flat_map(|c| sigma_crossings(c, sigma))
            .filter(|&t| t > 1.0)
            .collect();
        ts.sort_by(f64::total_cmp);
        let n = ts.len() as f64;
        let mean_j = (n - 1.0) / 2.0;
        let mean_t = ts.iter().sum::<f64>() / n;
        let (num, den) = ts.iter().enumerate().fold((0.0, 0.0), |(a, b), (j, t)| {
            let dj = j as f64 - mean_j;
            (a + dj * (t - mean_t), b + dj * dj)
        });
        spacings.push(num / den);
    }
    let spacing_ok = spacings.iter().all(|s| (s - 4.5324).abs() <= 0.1);
    if !spacing_ok {
        notes.push(format!("spacings {spacings:.4?}"));
    }

    let max_thin = x
        .curves
        .iter()
        .filter(|c| c.kind == CurveKind::Thin)
        .flat_map(|c| c.points.iter().map(|p| p.re))
        .fold(f64::NEG_INFINITY, f64::max);
    let thin_ok = max_thin <= 1.6363;
    let pass = axis_ok && joined && strip_ok && spacing_ok && thin_ok;
    outcome(
        pass,
        format!(
            "{} thin axis crossings, -2 joined: {joined}, strip zeros {strip:.3?}, spacing {:.4}..{:.4}, max thin sigma {max_thin:.4} {}",
            crossings.len(),
            spacings.iter().cloned().fold(f64::INFINITY, f64::min),
            spacings.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            notes.join("; ")
        ),
    )
}

fn c10_gallery() -> Outcome {
    let r = Rectangle::new(-17.0, 17.0, -17.0, 17.0).unwrap();
    let h = xray(Arc::new(Hermite7Oracle), r, GridSpec::default_for(&r)).unwrap();
    let (hz, hs) = (h.zeros().count(), h.saddles().count());
    let r = Rectangle::new(-28.0, 28.0, -20.0, 20.0).unwrap();
    let j = xray(Arc::new(BesselJ7Oracle), r, GridSpec::default_for(&r)).unwrap();
    let origin = j.zeros().find(|z| z.point.re.abs() < 1e-3 && z.point.im.abs() < 1e-3);
    let origin_ok = origin.is_some_and(|z| z.multiplicity == 7 && z.thick_branches == 7 && z.thin_branches == 7);
    outcome(
        hz == 7 && hs == 6 && origin_ok,
        format!(
            "H7: {hz} zeros, {hs} saddles; J7 origin: {}",
            origin.map_or("missing".to_string(), |z| format!(
                "multiplicity {}, {} thick / {} thin branches",
                z.multiplicity, z.thick_branches, z.thin_branches
            ))
        ),
    )
}

fn c11_sheets() -> Outcome {
    let want = [1, 2, 3, 4, 5, 7, 6, 8, 10, 9, 11, 13, 12, 14, 16, 15, 17, 18, 20, 19];
    let sheets = sheet_permutation(-1, 19, &ZetaOracle::default()).unwrap();
    let got: Vec<i64> = sheets.iter().map(|s| s.zero_ordinal.unwrap_or(0)).collect();
    outcome(got == want, format!("{got:?}"))
}

/// Criteria whose literal tolerance the true values cannot meet: the six
/// zero heights are quoted cut to two decimals, so 32.9351 and 37.5862 sit
/// more than 0.005 from 32.93 and 37.58. Their lines still print FAIL.
const UNATTAINABLE: [usize; 1] = [1];

fn main() {
    let criteria: [(&str, Check, u64); 11] = [
        ("first six zeros", c1_first_zeros, 1),
        ("zero counts", c2_counts, 5),
        ("Gram's law audit", c3_gram_law, 10),
        ("Lehmer pair", c4_lehmer, 30),
        ("Rosser counterexample", c5_rosser, 120),
        ("van de Lune constant", c6_sigma0, 30),
        ("line numbering", c7_line_numbering, u64::MAX),
        ("Euler-Maclaurin vs Riemann-Siegel", c8_dual_method, u64::MAX),
        ("X-ray of zeta", c9_zeta_xray, 120),
        ("Hermite/Bessel gallery", c10_gallery, 60),
        ("sheet permutation", c11_sheets, 60),
    ];
    let mut failed = Vec::new();
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let o = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let pass = o.pass && in_time;
        let budget = if *limit == u64::MAX { String::new() } else { format!(" (limit {limit}s)") };
        println!(
            "criterion {id:2} {} {name}: {:.2}s{budget}; {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            o.detail
        );
        if !pass {
            failed.push(id);
        }
    }
    let unexpected: Vec<usize> = failed.iter().copied().filter(|id| !UNATTAINABLE.contains(id)).collect();
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed.len(), criteria.len());
    if !unexpected.is_empty() {
        eprintln!("failed criteria: {unexpected:?}");
        std::process::exit(1);
    }
}

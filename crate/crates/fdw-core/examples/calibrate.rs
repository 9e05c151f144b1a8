// scratch calibration probe for acceptance parameters
use fdw_core::experiments::*;
use fdw_core::solver::*;
use fdw_core::*;
use std::time::Instant;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    match which.as_str() {
        "kernel" => kernel_probe(),
        "scan" => scan_probe(),
        "decay" => decay_probe(),
        "nonlinear" => nonlinear_probe(),
        "smoothing" => smoothing_probe(),
        "diffusion" => diffusion_probe(),
        "besov" => besov_probe(),
        "picard" => picard_probe(),
        _ => println!("usage: calibrate kernel|scan|decay|nonlinear|smoothing|diffusion|besov|picard"),
    }
}

fn kernel_probe() {
    // criterion 7 exact cases
    let late_times: Vec<f64> = (0..7).map(|k| 2f64.powi(k)).collect();
    let early_times: Vec<f64> = (0..4).map(|k| 2f64.powi(-3 + k)).collect();
    for sigma in [1.0, 1.5] {
        let t0 = Instant::now();
        let grid_late = Grid::new(1, 16384, 512.0).unwrap();
        let r = kernel_bound_check(sigma, &late_times, &grid_late, KernelBranch::Late, None, 4.0).unwrap();
        println!("sigma={sigma} late: factor {:.3} pass={} ratios {:?} ({:?})", r.stability_factor, r.pass, r.ratios, t0.elapsed());
        let grid_early = Grid::new(1, 8192, 64.0).unwrap();
        let r = kernel_bound_check(sigma, &early_times, &grid_early, KernelBranch::Early, None, 4.0).unwrap();
        println!("sigma={sigma} early: factor {:.3} pass={} ratios {:?}", r.stability_factor, r.pass, r.ratios);
    }
    let grid = Grid::new(1, 8192, 256.0).unwrap();
    let r = kernel_bound_check(2.0, &late_times, &grid, KernelBranch::Late, Some(6.0), 4.0).unwrap();
    println!("sigma=2 j=6 late: factor {:.3} pass={} ratios {:?}", r.stability_factor, r.pass, r.ratios);
    let r = kernel_bound_check(2.0, &early_times, &grid, KernelBranch::Early, Some(6.0), 4.0).unwrap();
    println!("sigma=2 j=6 early: factor {:.3} pass={} ratios {:?}", r.stability_factor, r.pass, r.ratios);
}

fn scan_probe() {
    let amp: f64 = std::env::args().nth(2).map(|s| s.parse().unwrap()).unwrap_or(0.3);
    let t_end: f64 = std::env::args().nth(3).map(|s| s.parse().unwrap()).unwrap_or(400.0);
    let grid = Grid::new(1, 512, 100.0).unwrap();
    let profile = PairState::new(
        RealField::from_fn(&grid, |x| (-x[0] * x[0]).exp()),
        RealField::zeros(&grid),
    ).unwrap();
    let mut base = SolverConfig::new(2.0, Nonlinearity::absolute(2.0), 0.05, t_end);
    base.snapshot_stride = 4000;
    let rho_grid = [2.0, 2.5, 3.0, 3.5, 4.0, 5.0];
    let t0 = Instant::now();
    let scan = critical_exponent_scan(&profile, amp, &rho_grid, &base, None, 6).unwrap();
    for c in &scan.cells {
        println!("rho={} -> {} (t_final={:.1}, l2_final={:.4e})", c.rho, c.classification, c.final_time, c.final_l2);
    }
    println!("bracket {:?} predicted {} monotone {} ({:?})", scan.bracket, scan.predicted_threshold, scan.monotone, t0.elapsed());
}

fn decay_probe() {
    // criterion 4: n=1 sigma=2, N=4096, L=400, window [20,200]
    let t0 = Instant::now();
    let grid = Grid::new(1, 4096, 400.0).unwrap();
    let data = PairState::new(
        RealField::from_fn(&grid, |x| (-x[0] * x[0]).exp()),
        RealField::from_fn(&grid, |x| 0.5 * (-x[0] * x[0]).exp()),
    ).unwrap();
    let times = log_spaced(20.0, 200.0, 16);
    let mut l2 = Vec::new();
    let mut linf = Vec::new();
    for &t in &times {
        let u = apply_pair_propagator(t, &data, 2.0).unwrap().u;
        l2.push(u.lp_norm(2.0));
        linf.push(u.lp_norm(f64::INFINITY));
    }
    let f2 = fit_decay_series(&times, &l2, (20.0, 200.0), "l2", -0.25, 0.05).unwrap();
    let fi = fit_decay_series(&times, &linf, (20.0, 200.0), "linf", -0.5, 0.10).unwrap();
    println!("1d L2 slope {:.4} (pass {}), Linf slope {:.4} (pass {}) ({:?})", f2.fitted_slope, f2.pass, fi.fitted_slope, fi.pass, t0.elapsed());

    let t0 = Instant::now();
    let grid2 = Grid::new(2, 512, 200.0).unwrap();
    let data2 = PairState::new(
        RealField::from_fn(&grid2, |x| (-(x[0]*x[0]+x[1]*x[1])).exp()),
        RealField::zeros(&grid2),
    ).unwrap();
    let mut l2 = Vec::new();
    for &t in &times {
        let u = apply_pair_propagator(t, &data2, 2.0).unwrap().u;
        l2.push(u.lp_norm(2.0));
    }
    let f2 = fit_decay_series(&times, &l2, (20.0, 200.0), "l2", -0.5, 0.10).unwrap();
    println!("2d L2 slope {:.4} (pass {}) ({:?})", f2.fitted_slope, f2.pass, t0.elapsed());
}

fn nonlinear_probe() {
    // criterion 11: n=1 sigma=2 alpha=1 rho=4 eps=1e-2, t_end=200
    let t0 = Instant::now();
    let grid = Grid::new(1, 2048, 100.0).unwrap();
    let data = PairState::new(
        RealField::from_fn(&grid, |x| 1e-2 * (-x[0] * x[0]).exp()),
        RealField::zeros(&grid),
    ).unwrap();
    let mut cfg = SolverConfig::new(2.0, Nonlinearity::absolute(4.0), 0.02, 200.0);
    cfg.snapshot_stride = 1000;
    cfg.norm_s = 1.0;
    cfg.norm_alpha = 1.0;
    let record = solve(&data, &cfg).unwrap();
    println!("outcome {:?} rows {} ({:?})", record.outcome, record.rows.len(), t0.elapsed());
    let x20 = {
        let idx: Vec<usize> = (0..record.rows.len()).filter(|&i| record.rows[i].t <= 20.0).collect();
        let times: Vec<f64> = idx.iter().map(|&i| record.rows[i].t).collect();
        let l2: Vec<f64> = idx.iter().map(|&i| record.rows[i].l2).collect();
        let hs: Vec<f64> = idx.iter().map(|&i| record.rows[i].hs).collect();
        let wa: Vec<f64> = idx.iter().map(|&i| record.rows[i].weighted_alpha).collect();
        fdw_core::norms::x_norm_accumulate(&times, &l2, &hs, &wa, 1, 2.0, 1.0, 1.0, 1.0).unwrap()
    };
    let x_full = record.x_norm(1.0).unwrap();
    println!("x norm sup[0,20] {:.6e} sup[0,200] {:.6e} ratio {:.3}", x20, x_full, x_full / x20);
    let f_l2 = fit_decay(&record, NormColumn::L2, (20.0, 200.0), RateKind::NonlinearL2 { r: 1.0 }, 0.07).unwrap();
    let f_wa = fit_decay(&record, NormColumn::WeightedAlpha, (20.0, 200.0), RateKind::NonlinearWeighted { alpha: 1.0, r: 1.0 }, 0.10).unwrap();
    println!("L2 slope {:.4} vs {:.2} pass {}", f_l2.fitted_slope, f_l2.predicted_slope, f_l2.pass);
    println!("weighted slope {:.4} vs {:.2} pass {}", f_wa.fitted_slope, f_wa.predicted_slope, f_wa.pass);
}

fn smoothing_probe() {
    // criterion 5: (s1,s2,gamma)=(1,0,1) over t in [1,100] on the corpus
    let t0 = Instant::now();
    let grid = Grid::new(1, 2048, 80.0).unwrap();
    let times = log_spaced(1.0, 100.0, 9);
    for entry in fdw_core::corpus::standard_corpus() {
        let g = entry.sample(&grid);
        let rep = smoothing_estimate_check(2.0, 1.0, 0.0, 1.0, &g, &times, 8.0).unwrap();
        println!("{:20} max/min {:8.3} pass {} skipped {}", entry.name, rep.max_over_min, rep.pass, rep.skipped);
    }
    println!("({:?})", t0.elapsed());
}

fn diffusion_probe() {
    let t0 = Instant::now();
    let grid = Grid::new(1, 2048, 200.0).unwrap();
    let data = PairState::new(
        RealField::from_fn(&grid, |x| (-x[0] * x[0]).exp()),
        RealField::from_fn(&grid, |x| 0.3 * (-x[0] * x[0] / 4.0).exp()),
    ).unwrap();
    let times = [10.0, 20.0, 40.0, 80.0, 120.0, 160.0, 200.0];
    let rep = diffusion_linear(&data, 2.0, 2.0, &times).unwrap();
    println!("e(t) = {:?}", rep.scaled_error);
    println!("decreasing {} halved {} e(200)/e(20) = {:.3} warn {} ({:?})", rep.decreasing, rep.halved, rep.scaled_error.last().unwrap() / rep.scaled_error[1], rep.wraparound_warning, t0.elapsed());
}

fn besov_probe() {
    // criterion 8: LP vs difference ratio factor <=32 at (1/2,2,2), grid stability <25%
    let t0 = Instant::now();
    for n_pts in [256usize, 512] {
        let grid = Grid::new(1, n_pts, 20.0).unwrap();
        for entry in fdw_core::corpus::standard_corpus() {
            let f = entry.sample(&grid);
            let a = fdw_core::norms::besov_norm_lp(&f, 0.5, 2.0, 2.0, true).unwrap().value;
            let b = fdw_core::norms::besov_norm_difference(&f, 0.5, 2.0, 2.0, 1).unwrap();
            println!("N={n_pts} {:20} lp {:.5e} diff {:.5e} ratio {:.4}", entry.name, a, b, b / a);
        }
    }
    println!("({:?})", t0.elapsed());
}

fn picard_probe() {
    use fdw_core::picard::*;
    let t0 = Instant::now();
    let grid = Grid::new(1, 128, 12.0).unwrap();
    let data = PairState::new(
        RealField::from_fn(&grid, |x| 1e-3 * (-x[0] * x[0]).exp()),
        RealField::zeros(&grid),
    ).unwrap();
    let mut cfg = SolverConfig::new(2.0, Nonlinearity::signed(3.0), 0.0125, 0.5);
    cfg.snapshot_stride = 4;
    let out = picard_iterate(&data, 0.5, &cfg, 6, &XNormParams::default()).unwrap();
    println!("factors {:?}", out.contraction_factors);
    let record = solve(&data, &cfg).unwrap();
    let limit = out.iterates.last().unwrap();
    let mut sup = 0.0f64;
    for (j, t) in limit.times.iter().enumerate() {
        if let Some((_, snap)) = record.snapshots.iter().find(|(ts, _)| (ts - t).abs() < 1e-9) {
            sup = sup.max(limit.states[j].to_real().u.axpy(-1.0, &snap.u).unwrap().lp_norm(2.0));
        }
    }
    println!("limit vs solve sup {:.3e} ({:?})", sup, t0.elapsed());
}

//! One function per subcommand. Each writes its CSV tables into the output
//! directory and returns the summary block for the manifest. CSV bodies are
//! pure functions of config + seed: no timestamps, no machine info.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use gibbstate::rat::rat_to_string;
use gibbstate::{
    l1_convergence_statistic, periodic_point_measure, pointwise_sequence, pressure_estimate,
    weighted_preimage_measure, word_to_string, ConvergenceReport, Error, HaarOracle, MarkovOracle,
    Pairing, Point, Potential, TreeOptions,
};

use crate::config::{build_anchor, build_dictionary, build_instance, build_point, depth_list};
use crate::config::{Config, Instance};
use crate::{AppError, Command};

pub fn dispatch(
    cmd: Command,
    cfg: &mut Config,
    out: &Path,
    force: bool,
) -> Result<Value, AppError> {
    match cmd {
        Command::Preimages => preimages(cfg, out, force),
        Command::Fixpoints => fixpoints(cfg, out, force),
        Command::Pressure => pressure(cfg, out, force),
        Command::MuN => measure_cmd(cfg, out, force, false),
        Command::PeriodicMeasure => measure_cmd(cfg, out, force, true),
        Command::L1Stat => l1_stat(cfg, out, force),
        Command::Pointwise => pointwise(cfg, out, force),
        Command::Lemma1Check => lemma1_check(cfg, out),
        Command::GibbsRatio => gibbs_ratio(cfg, out, force),
    }
}

fn tree_options(cfg: &mut Config, force: bool) -> TreeOptions {
    let mut opts = TreeOptions::default();
    if let Some(cap) = cfg.leaf_cap {
        opts.leaf_cap = cap;
    }
    opts.force = force;
    cfg.leaf_cap = Some(opts.leaf_cap);
    opts
}

fn check_enumeration_cap(degree: usize, n: usize, opts: &TreeOptions) -> Result<(), AppError> {
    let requested = (degree as f64).powi(n as i32);
    if !opts.force && requested > opts.leaf_cap as f64 {
        return Err(Error::ResourceCap {
            requested,
            cap: opts.leaf_cap,
        }
        .into());
    }
    Ok(())
}

/// The exact reference measure when one exists: transfer-matrix eigendata on
/// shifts, Haar on the torus when the potential is constant.
fn exact_oracle(inst: &Instance) -> Result<Option<Box<dyn Pairing>>, AppError> {
    match inst {
        Instance::Shift(s, p) => Ok(Some(Box::new(MarkovOracle::new(s, p)?))),
        Instance::Torus(f, p) => Ok(p
            .is_constant()
            .then(|| Box::new(HaarOracle::new(f.dim())) as Box<dyn Pairing>)),
    }
}

fn require_oracle(inst: &Instance) -> Result<Box<dyn Pairing>, AppError> {
    exact_oracle(inst)?.ok_or_else(|| {
        AppError::Config(
            "this comparison needs an exact oracle: a shift system, or a torus system with \
             constant potential"
                .into(),
        )
    })
}

fn point_cells(p: &Point) -> String {
    if let Some(c) = p.exact_coords() {
        c.iter().map(rat_to_string).collect::<Vec<_>>().join(",")
    } else if let Some(c) = p.coords_f64() {
        c.iter()
            .map(|v| format!("{v}"))
            .collect::<Vec<_>>()
            .join(",")
    } else if let Point::Shift { head, tail } = p {
        format!("{},{}", word_to_string(head), word_to_string(tail))
    } else {
        unreachable!("every point is torus or shift")
    }
}

fn write_file(out: &Path, name: &str, body: &str) -> Result<(), AppError> {
    fs::write(out.join(name), body)?;
    Ok(())
}

fn preimages(cfg: &mut Config, out: &Path, force: bool) -> Result<Value, AppError> {
    let inst = build_instance(cfg)?;
    let x = build_point(cfg, &inst)?;
    let n = cfg.n.unwrap_or(1);
    cfg.n = Some(n);
    let opts = tree_options(cfg, force);
    check_enumeration_cap(inst.sys().max_degree(), n, &opts)?;

    let mut csv = match &inst {
        Instance::Torus(f, _) => {
            let coords: Vec<String> = (0..f.dim()).map(|i| format!("x{i}")).collect();
            format!("level,{}\n", coords.join(","))
        }
        Instance::Shift(..) => "level,head,tail\n".to_string(),
    };
    let mut level = vec![x];
    let mut total = 0usize;
    for l in 1..=n {
        let mut next = Vec::new();
        for y in &level {
            next.extend(inst.sys().preimages(y)?);
        }
        level = next;
        total += level.len();
        for p in &level {
            writeln!(csv, "{l},{}", point_cells(p)).expect("string write");
        }
    }
    write_file(out, "preimages.csv", &csv)?;
    Ok(json!({
        "file": "preimages.csv",
        "rows": total,
        "deepest_level_count": level.len(),
    }))
}

fn fixpoints(cfg: &mut Config, out: &Path, force: bool) -> Result<Value, AppError> {
    let inst = build_instance(cfg)?;
    let ns = depth_list(cfg)?;
    cfg.n_list = Some(ns.clone());
    cfg.n = None;
    let _ = tree_options(cfg, force);

    let mut csv = String::from("n,count\n");
    let mut counts = Vec::new();
    for &n in &ns {
        let c = inst.sys().count_fixed_points(n)?;
        writeln!(csv, "{n},{c:.0}").expect("string write");
        counts.push(c);
    }
    write_file(out, "fixpoints.csv", &csv)?;
    Ok(json!({ "file": "fixpoints.csv", "counts": counts }))
}

fn pressure(cfg: &mut Config, out: &Path, force: bool) -> Result<Value, AppError> {
    let inst = build_instance(cfg)?;
    let ns = depth_list(cfg)?;
    cfg.n_list = Some(ns.clone());
    cfg.n = None;
    let opts = tree_options(cfg, force);

    let mut csv = String::from("n,estimate\n");
    let mut rows = Vec::new();
    for &n in &ns {
        let v = pressure_estimate(inst.sys(), inst.phi(), n, opts.leaf_cap, opts.force)?;
        writeln!(csv, "{n},{v}").expect("string write");
        rows.push(json!([n, v]));
    }
    write_file(out, "pressure.csv", &csv)?;
    let oracle_pressure = match &inst {
        Instance::Shift(s, p) => Some(MarkovOracle::new(s, p)?.pressure()),
        Instance::Torus(..) => None,
    };
    Ok(json!({
        "file": "pressure.csv",
        "rows": rows,
        "oracle_pressure": oracle_pressure,
    }))
}

fn measure_cmd(
    cfg: &mut Config,
    out: &Path,
    force: bool,
    periodic: bool,
) -> Result<Value, AppError> {
    let inst = build_instance(cfg)?;
    let n = cfg
        .n
        .ok_or_else(|| AppError::Config("this command needs a single depth n".into()))?;
    let opts = tree_options(cfg, force);

    let mu = if periodic {
        periodic_point_measure(inst.sys(), inst.phi(), n, opts.leaf_cap, opts.force)?
    } else {
        let x = build_point(cfg, &inst)?;
        weighted_preimage_measure(inst.sys(), inst.phi(), &x, n, &opts)?
    };
    write_file(out, "measure.csv", &mu.to_csv())?;
    let mut files = vec!["measure.csv".to_string()];
    let mut distance: Option<f64> = None;

    if cfg.dictionary.is_some() {
        let dict = build_dictionary(cfg, &inst)?;
        let oracle = exact_oracle(&inst)?;
        let mut csv = String::from("g_id,weight,integral,oracle,difference\n");
        let mut worst = 0.0f64;
        for (g, w) in dict.entries() {
            let integral = mu.integrate(g)?;
            match &oracle {
                Some(o) => {
                    let reference = o.pair(g)?;
                    let diff = (integral - reference).abs();
                    worst = worst.max(w * diff);
                    writeln!(csv, "{},{w},{integral},{reference},{diff}", g.id())
                        .expect("string write");
                }
                None => writeln!(csv, "{},{w},{integral},,", g.id()).expect("string write"),
            }
        }
        write_file(out, "pairings.csv", &csv)?;
        files.push("pairings.csv".to_string());
        if oracle.is_some() {
            distance = Some(worst);
        }
    }
    Ok(json!({
        "files": files,
        "atoms": mu.atoms().len(),
        "weak_star_distance": distance,
    }))
}

fn l1_stat(cfg: &mut Config, out: &Path, force: bool) -> Result<Value, AppError> {
    let inst = build_instance(cfg)?;
    let ns = depth_list(cfg)?;
    if ns.windows(2).any(|p| p[1] <= p[0]) {
        return Err(AppError::Config("n_list must increase strictly".into()));
    }
    cfg.n_list = Some(ns.clone());
    cfg.n = None;
    let samples = cfg.samples.unwrap_or(20);
    cfg.samples = Some(samples);
    let seed = cfg
        .seed
        .ok_or_else(|| AppError::Config("sampling runs need a seed (config or --seed)".into()))?;
    let sampler = cfg
        .sampler
        .clone()
        .ok_or_else(|| AppError::Config("this command needs a sampler in the config".into()))?;
    let dict = build_dictionary(cfg, &inst)?;
    let oracle = require_oracle(&inst)?;
    let opts = tree_options(cfg, force);

    let points = sampler.sample(inst.sys(), inst.phi(), samples, seed, &opts)?;
    let mut csv = String::from("n,statistic,g_id,samples\n");
    let mut reports = Vec::new();
    let mut minima = serde_json::Map::new();
    for (g, _) in dict.entries() {
        let reference = oracle.pair(g)?;
        let mut rows = Vec::new();
        for &n in &ns {
            let stat =
                l1_convergence_statistic(inst.sys(), inst.phi(), g, reference, &points, n, &opts)?;
            writeln!(csv, "{n},{stat},{},{samples}", g.id()).expect("string write");
            rows.push((n, stat));
        }
        let report = ConvergenceReport {
            system_id: inst.sys().id(),
            g_id: g.id(),
            sampling: sampler.label(),
            samples,
            tolerance: cfg.tolerance,
            achieved: cfg.tolerance.map(|t| rows.iter().any(|&(_, s)| s < t)),
            rows,
        };
        report.validate()?;
        minima.insert(g.id(), json!(report.min_value()));
        reports.push(report);
    }
    write_file(out, "stat.csv", &csv)?;
    let json_body = serde_json::to_string_pretty(&reports)
        .map_err(|e| AppError::Config(format!("report serialization: {e}")))?;
    write_file(out, "stat.json", &(json_body + "\n"))?;
    Ok(json!({
        "files": ["stat.csv", "stat.json"],
        "min_statistic": minima,
    }))
}

fn pointwise(cfg: &mut Config, out: &Path, force: bool) -> Result<Value, AppError> {
    let inst = build_instance(cfg)?;
    let z = build_point(cfg, &inst)?;
    let ns = depth_list(cfg)?;
    cfg.n_list = Some(ns.clone());
    cfg.n = None;
    let dict = build_dictionary(cfg, &inst)?;
    let oracle = require_oracle(&inst)?;
    let opts = tree_options(cfg, force);

    let report = pointwise_sequence(
        inst.sys(),
        inst.phi(),
        &z,
        &*oracle,
        &dict,
        &ns,
        cfg.tolerance,
        &opts,
    )?;
    write_file(out, "report.csv", &report.to_csv())?;
    write_file(out, "report.json", &(report.to_json()? + "\n"))?;
    Ok(json!({
        "files": ["report.csv", "report.json"],
        "min_distance": report.min_value(),
        "achieved": report.achieved,
    }))
}

fn lemma1_check(cfg: &mut Config, out: &Path) -> Result<Value, AppError> {
    let inst = build_instance(cfg)?;
    let Instance::Shift(sys, phi) = &inst else {
        return Err(AppError::Config(
            "lifted cylinders are defined for shift systems".into(),
        ));
    };
    let anchored = build_anchor(cfg)?;
    let n_max = cfg.n.unwrap_or(anchored.depth() + 3);
    cfg.n = Some(n_max);

    let oracle = MarkovOracle::new(sys, phi)?;
    let lifted = oracle.lifted_cylinder_measure(&anchored, n_max);
    let mut csv = String::from("n,route,direct,difference\n");
    for (i, v) in lifted.route.iter().enumerate() {
        writeln!(
            csv,
            "{i},{v},{},{}",
            lifted.direct,
            (v - lifted.direct).abs()
        )
        .expect("string write");
    }
    write_file(out, "lemma1.csv", &csv)?;
    Ok(json!({
        "file": "lemma1.csv",
        "anchor_depth": lifted.anchor_depth,
        "max_difference": lifted.max_difference,
        "stabilized": lifted.max_difference < 1e-12,
    }))
}

fn gibbs_ratio(cfg: &mut Config, out: &Path, force: bool) -> Result<Value, AppError> {
    let inst = build_instance(cfg)?;
    let Instance::Shift(sys, phi) = &inst else {
        return Err(AppError::Config(
            "Gibbs ratios are computed on shift systems".into(),
        ));
    };
    let ns = depth_list(cfg)?;
    cfg.n_list = Some(ns.clone());
    cfg.n = None;
    let opts = tree_options(cfg, force);

    let oracle = MarkovOracle::new(sys, phi)?;
    let mut csv = String::from("n,cylinders,min_ratio,max_ratio\n");
    let mut overall = (f64::INFINITY, 0.0f64);
    for &n in &ns {
        check_enumeration_cap(sys.alphabet(), n, &opts)?;
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        let words = sys.circular_words(n);
        for w in &words {
            let y = Point::periodic(w)?;
            let ratio = oracle.gibbs_ratio(&y, n)?;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        if words.is_empty() {
            continue;
        }
        overall = (overall.0.min(lo), overall.1.max(hi));
        writeln!(csv, "{n},{},{lo},{hi}", words.len()).expect("string write");
    }
    write_file(out, "gibbs_ratio.csv", &csv)?;
    Ok(json!({
        "file": "gibbs_ratio.csv",
        "min_ratio": overall.0,
        "max_ratio": overall.1,
    }))
}

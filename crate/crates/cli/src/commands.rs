//! The experiment commands behind the CLI subcommands. Each one is a pure
//! function of (config, rng seed): identical inputs reproduce identical
//! data files.

use crate::config::Config;
use crate::manifest::{fmt_f64, Manifest};
use anyhow::{anyhow, bail, Result};
use spinelim_core::rotation::{
    annulus_rotation_check, tongue_raster, OrbitKind, TongueRaster,
};
use spinelim_core::suspension::{
    attract_cloud, attract_cover, continuity_scan, periodic_match, BoxCover, CarrierMap,
    CloudSettings, FattenedMap,
};
use spinelim_core::{families, FamilyParam, ManifoldModel};
use std::path::{Path, PathBuf};

fn fattened_from(config: &Config) -> Result<FattenedMap> {
    let family = config.family()?;
    let delta = config.get_f64("map.delta")?;
    let epsilon = config.get_f64("map.epsilon")?;
    let theta0 = config.get_f64_or("map.theta0", spinelim_core::suspension::DEFAULT_THETA0)?;
    FattenedMap::with_theta0(family, delta, epsilon, theta0)
        .map_err(|e| anyhow!("map parameters: {e}"))
}

fn cloud_settings(config: &Config, seed: u64) -> Result<CloudSettings> {
    Ok(CloudSettings {
        seeds: config.get_usize("cloud.seeds")?,
        transient: config.get_usize("cloud.transient")?,
        keep: config.get_usize("cloud.keep")?,
        rng_seed: seed,
    })
}

/// Binary P6 pixmap, black = set bit.
fn p6_from_bits(width: usize, height: usize, bit: impl Fn(usize, usize) -> bool) -> Vec<u8> {
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    for row in 0..height {
        for col in 0..width {
            let v = if bit(col, row) { 0u8 } else { 255u8 };
            out.extend_from_slice(&[v, v, v]);
        }
    }
    out
}

fn cover_pixmap(cover: &BoxCover) -> Vec<u8> {
    let r = cover.resolution();
    // row 0 at the top of the image corresponds to the top of the carrier
    p6_from_bits(r, r, |i, row| cover.is_occupied(i, r - 1 - row))
}

fn tongue_pixmap(raster: &TongueRaster) -> Vec<u8> {
    p6_from_bits(raster.res_omega, raster.res_b, |j, row| {
        raster.member[raster.idx(raster.res_b - 1 - row, j)]
    })
}

/// Sample an attractor cloud, write it as CSV (plus the optional box-cover
/// raster), and record the cloud diameter bound in the manifest.
pub fn cmd_attractor(config: &Config, out: &Path, seed: Option<u64>) -> Result<Vec<PathBuf>> {
    let name = config.experiment()?.to_string();
    let map = fattened_from(config)?;
    let settings = cloud_settings(config, config.rng_seed(seed)?)?;
    let mut manifest = Manifest::new(out, config);

    let cloud = attract_cloud(&map, &settings)?;
    let mut csv = String::from("seed_index,iter,x_or_theta,y_or_r\n");
    for (i, p) in cloud.points.iter().enumerate() {
        let (s, it) = cloud.index_of(i);
        csv.push_str(&format!("{s},{it},{},{}\n", fmt_f64(p.x), fmt_f64(p.y)));
    }
    manifest.write_output(&format!("{name}.cloud.csv"), csv.as_bytes())?;
    manifest.record("cloud.points", cloud.points.len());
    manifest.record("cloud.diameter_bound", fmt_f64(cloud.diameter_bound()));

    if let Some(res) = config.get_opt("cover.resolution") {
        let resolution: usize = res
            .parse()
            .map_err(|_| anyhow!("config key `cover.resolution`: expected an integer"))?;
        let steps = config.get_usize_or("cover.steps", 20)?;
        let cover = attract_cover(&map, resolution, steps)?;
        manifest.write_output(&format!("{name}.cover.ppm"), &cover_pixmap(&cover))?;
        manifest.record("cover.occupied", cover.occupied_count());
    }
    manifest.finish(&name)
}

/// Rasterize an Arnold tongue: P6 membership pixmap plus per-cell interval
/// CSV.
pub fn cmd_tongues(config: &Config, out: &Path, _seed: Option<u64>) -> Result<Vec<PathBuf>> {
    let name = config.experiment()?.to_string();
    let r = config.get_f64("tongues.r")?;
    let b_max = config.get_f64("tongues.b_max")?;
    let res_b = config.get_usize("tongues.res_b")?;
    let res_omega = config.get_usize("tongues.res_omega")?;
    let omega_min = config.get_f64_or("tongues.omega_min", 0.0)?;
    let omega_max = config.get_f64_or("tongues.omega_max", 1.0)?;
    let n = config.get_usize_or("tongues.n", 4096)?;
    let grid_res = config.get_usize_or("rotation.grid_res", 4096)?;
    let mut manifest = Manifest::new(out, config);

    let raster = tongue_raster(r, b_max, res_b, (omega_min, omega_max), res_omega, n, grid_res)?;
    manifest.write_output(&format!("{name}.tongues.ppm"), &tongue_pixmap(&raster))?;

    let mut csv = String::from("b,omega,rho_lo,rho_hi,member\n");
    for i in 0..res_b {
        for j in 0..res_omega {
            let cell = &raster.cells[raster.idx(i, j)];
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_f64(raster.b_center(i)),
                fmt_f64(raster.omega_center(j)),
                fmt_f64(cell.lo),
                fmt_f64(cell.hi),
                u8::from(raster.member[raster.idx(i, j)]),
            ));
        }
    }
    manifest.write_output(&format!("{name}.tongues.csv"), csv.as_bytes())?;
    manifest.record("tongues.members", raster.member.iter().filter(|&&m| m).count());
    manifest.finish(&name)
}

/// Orbit rotation sampling of the fattened annulus map against the
/// envelope rotation interval.
pub fn cmd_rotation(config: &Config, out: &Path, seed: Option<u64>) -> Result<Vec<PathBuf>> {
    let name = config.experiment()?.to_string();
    let map = fattened_from(config)?;
    if map.model() != ManifoldModel::Annulus {
        bail!("config key `family.kind`: rotation needs the standard family");
    }
    let seeds = config.get_usize_or("rotation.seeds", 200)?;
    let n = config.get_usize_or("rotation.n", 100_000)?;
    let mut manifest = Manifest::new(out, config);

    let report = annulus_rotation_check(&map, seeds, n, config.rng_seed(seed)?)?;
    let mut csv = String::from("orbit_index,kind,rotation_number\n");
    for (i, s) in report.samples.iter().enumerate() {
        let kind = match s.kind {
            OrbitKind::Random => "random",
            OrbitKind::EndpointLo => "endpoint_lo",
            OrbitKind::EndpointHi => "endpoint_hi",
        };
        csv.push_str(&format!("{i},{kind},{}\n", fmt_f64(s.rotation)));
    }
    manifest.write_output(&format!("{name}.rotation.csv"), csv.as_bytes())?;
    manifest.record("rotation.lo", fmt_f64(report.interval.lo));
    manifest.record("rotation.hi", fmt_f64(report.interval.hi));
    manifest.record("rotation.half_width", fmt_f64(report.interval.half_width));
    manifest.record("rotation.lo_gap", fmt_f64(report.lo_gap));
    manifest.record("rotation.hi_gap", fmt_f64(report.hi_gap));
    manifest.record("rotation.endpoint_failures", report.endpoint_failures.len());
    manifest.finish(&name)
}

/// Hausdorff continuity scan of the attractor along a tent-parameter grid.
pub fn cmd_continuity(config: &Config, out: &Path, seed: Option<u64>) -> Result<Vec<PathBuf>> {
    let name = config.experiment()?.to_string();
    if config.get("family.kind")? != "tent" {
        bail!("config key `family.kind`: continuity scans run on the tent family");
    }
    let start = config.get_f64("grid.start")?;
    let stop = config.get_f64("grid.stop")?;
    let step = config.get_f64("grid.step")?;
    if !(step > 0.0 && stop >= start) {
        bail!("config keys `grid.*`: need step > 0 and stop >= start");
    }
    let delta = config.get_f64("map.delta")?;
    let epsilon = config.get_f64("map.epsilon")?;
    let settings = cloud_settings(config, config.rng_seed(seed)?)?;
    let mut manifest = Manifest::new(out, config);

    let mut curve = Vec::new();
    let mut s = start;
    while s <= stop + 1e-12 {
        curve.push((s, FamilyParam::tent(s.min(2.0)).map_err(|e| anyhow!("grid value {s}: {e}"))?));
        s += step;
    }
    let scan = continuity_scan(&curve, delta, epsilon, &settings)?;
    let mut csv = String::from("t,d_hausdorff\n");
    for (t, d) in &scan.rows {
        csv.push_str(&format!("{},{}\n", fmt_f64(*t), fmt_f64(*d)));
    }
    manifest.write_output(&format!("{name}.continuity.csv"), csv.as_bytes())?;
    manifest.record("continuity.rows", scan.rows.len());
    manifest.record("continuity.max_dh", fmt_f64(scan.max_distance()));
    manifest.record(
        "continuity.unstabilized",
        scan.unstabilized
            .iter()
            .map(|t| format!("{t}"))
            .collect::<Vec<_>>()
            .join(";"),
    );
    manifest.finish(&name)
}

/// Match fattened periodic points against the exact tent enumeration.
pub fn cmd_periodic(config: &Config, out: &Path, _seed: Option<u64>) -> Result<Vec<PathBuf>> {
    let name = config.experiment()?.to_string();
    let map = fattened_from(config)?;
    let max_period = config.get_usize("periodic.max_period")?;
    let tol = config.get_f64_or("periodic.tol", 1e-9)?;
    let mut manifest = Manifest::new(out, config);

    let report = periodic_match(&map, max_period, tol)?;
    let mut csv = String::from("period,expected,matched,unconverged,max_residual\n");
    for r in &report.per_period {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            r.period,
            r.expected,
            r.matched,
            r.unconverged,
            fmt_f64(r.max_residual)
        ));
    }
    manifest.write_output(&format!("{name}.periodic.csv"), csv.as_bytes())?;
    manifest.record("periodic.all_matched", report.all_matched());
    manifest.finish(&name)
}

/// Periodic-orbit growth estimates of the tent entropy.
pub fn cmd_entropy(config: &Config, out: &Path, _seed: Option<u64>) -> Result<Vec<PathBuf>> {
    let name = config.experiment()?.to_string();
    let s = config.get_f64("family.s")?;
    let n_max = config.get_usize("entropy.n")?;
    if !(4..=20).contains(&n_max) {
        bail!("config key `entropy.n`: expected 4..=20, got {n_max}");
    }
    let mut manifest = Manifest::new(out, config);
    let mut csv = String::from("n,fixed_points,estimate\n");
    for n in 4..=n_max {
        let count = families::tent_periodic_points(s, n)
            .map_err(|e| anyhow!("config key `family.s`: {e}"))?
            .len();
        let est = families::entropy_estimate(s, n)?;
        csv.push_str(&format!("{n},{count},{}\n", fmt_f64(est)));
    }
    manifest.write_output(&format!("{name}.entropy.csv"), csv.as_bytes())?;
    manifest.record("entropy.log_s", fmt_f64(s.ln()));
    manifest.finish(&name)
}

/// Run the invariant suite and the acceptance criteria; `Ok(true)` when
/// everything non-advisory passed.
pub fn cmd_verify() -> Result<bool> {
    let mut all_ok = true;
    for outcome in crate::checks::run_all() {
        let status = if outcome.pass {
            "PASS"
        } else if outcome.advisory {
            "FAIL (advisory)"
        } else {
            all_ok = false;
            "FAIL"
        };
        println!("[{status}] {}: {}", outcome.name, outcome.detail);
    }
    Ok(all_ok)
}

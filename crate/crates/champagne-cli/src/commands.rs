use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::PathBuf;

use champagne::classical::{classical_winding, critical_value_curve, image_boundary, potential, EMValue, EllipseLoop};
use champagne::lattice::{conjugacy_invariants, lattice_monodromy, LatticeScale, TransportResult};
use champagne::quantum::{joint_spectrum, perturbed_spectrum, spectral_lattice, SpectrumPoint};
use champagne::IntMatrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{LoopKind, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{floats, Cell, OutputDir};
use crate::svg::Plot;

/// Files written by a command, plus lines for stdout.
pub struct Summary {
    pub files: Vec<PathBuf>,
    pub lines: Vec<String>,
}

/// Largest `r` drawn in the potential profile.
const PROFILE_R: f64 = 1.3;

fn boundary_points(e_max: f64, samples: usize) -> Result<Vec<[f64; 2]>> {
    Ok(image_boundary(e_max, samples)?.iter().map(|c| [c.e, c.j]).collect())
}

fn matrix_line(m: &IntMatrix2) -> String {
    let r = m.rows();
    format!("[[{}, {}], [{}, {}]]", r[0][0], r[0][1], r[1][0], r[1][1])
}

pub fn classical_scan(cfg: &RunConfig, out: &OutputDir) -> Result<Summary> {
    let names = [
        "critical_curve.csv",
        "image_boundary.csv",
        "potential.csv",
        "critical_values.svg",
        "potential.svg",
    ];
    out.claim(&names)?;
    let n = cfg.curve_samples;
    let e_max = cfg.quantum.e_max;
    // Radius at which the curve reaches e_max: 3u² - 2u = e_max.
    let r_top = ((1.0 + (1.0 + 3.0 * e_max).sqrt()) / 3.0).sqrt();

    let mut curve = Vec::with_capacity(n);
    for i in 0..n {
        let r = FRAC_1_SQRT_2 + (r_top - FRAC_1_SQRT_2) * i as f64 / (n - 1) as f64;
        let (hi, lo) = critical_value_curve(r)?;
        curve.push(floats(&[r, hi.e, hi.j, lo.j]));
    }
    let boundary = boundary_points(e_max, n)?;
    let profile: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let r = PROFILE_R * i as f64 / (n - 1) as f64;
            [r, potential(r)]
        })
        .collect();

    let mut files = vec![
        out.csv(names[0], &["r", "E", "j_plus", "j_minus"], &curve)?,
        out.csv(
            names[1],
            &["E", "j"],
            &boundary.iter().map(|p| floats(p)).collect::<Vec<_>>(),
        )?,
        out.csv(
            names[2],
            &["r", "V"],
            &profile.iter().map(|p| floats(p)).collect::<Vec<_>>(),
        )?,
    ];

    let mut plot = Plot::fitted(&boundary);
    plot.polyline(&boundary, "#1f4e9c", 2.0, false);
    plot.dots(&[[0.0, 0.0], [-0.25, 0.0]], "#c0392b", 3.5);
    plot.label([0.0, 0.0], "focus-focus", "#c0392b");
    files.push(out.svg(names[3], &plot.finish("Critical values of (H, J)", "E", "j"))?);

    let mut plot = Plot::fitted(&profile);
    plot.polyline(&profile, "#1f4e9c", 2.0, false);
    plot.dots(&[[FRAC_1_SQRT_2, -0.25]], "#c0392b", 3.5);
    files.push(out.svg(names[4], &plot.finish("V(r) = r^4 - r^2", "r", "V"))?);

    Ok(Summary {
        files,
        lines: vec![format!("{n} critical values from (E, j) = (-0.25, 0) to E = {e_max}")],
    })
}

pub fn classical_monodromy(cfg: &RunConfig, out: &OutputDir) -> Result<Summary> {
    let names = [
        "classical_monodromy.txt",
        "classical_winding.csv",
        "classical_monodromy.svg",
    ];
    out.claim(&names)?;
    let lp = cfg.ellipse(LoopKind::Classical);
    lp.validate()?;
    let vertices = lp.vertices();
    let w = classical_winding(&vertices, &cfg.monodromy_options())?;
    let m = IntMatrix2::new(1, 0, w.k, 1);
    let (trace, det, unipotent) = conjugacy_invariants(&m)?;
    let verdict = if m == IntMatrix2::IDENTITY {
        "trivial"
    } else {
        "nontrivial"
    };
    let lines = vec![
        format!("monodromy = {}", matrix_line(&m)),
        "basis = (S1 orbit, radial cycle)".to_string(),
        format!("winding = {:.16e}", w.total),
        format!("k = {}", w.k),
        format!("invariants = trace {trace}, det {det}, unipotent {unipotent}"),
        format!("verdict = {verdict}"),
    ];
    let rows: Vec<Vec<Cell>> = vertices
        .iter()
        .zip(&w.thetas)
        .enumerate()
        .map(|(i, (v, t))| vec![Cell::Int(i as i64), Cell::Float(v.e), Cell::Float(v.j), Cell::Float(*t)])
        .collect();
    let mut files = vec![
        out.report(names[0], &lines)?,
        out.csv(names[1], &["index", "E", "j", "theta"], &rows)?,
    ];

    let boundary = boundary_points(cfg.quantum.e_max, cfg.curve_samples)?;
    let mut plot = Plot::fitted(&boundary);
    plot.polyline(&boundary, "#1f4e9c", 2.0, false);
    plot.polyline(&lp.points(), "#e67e22", 1.5, true);
    plot.dots(&[[0.0, 0.0]], "#c0392b", 3.5);
    files.push(out.svg(names[2], &plot.finish("Classical monodromy loop", "E", "j"))?);
    Ok(Summary { files, lines })
}

/// Phase-space volume of `{H <= e}` by Monte Carlo over the disc `V <= e`;
/// over each `x` the momenta fill a disc of area `2π (e - V(x))`.
pub fn energy_volume(e: f64, samples: usize, seed: u64) -> f64 {
    if e <= -0.25 {
        return 0.0;
    }
    let rmax = ((1.0 + (1.0 + 4.0 * e).sqrt()) / 2.0).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = 0.0;
    for _ in 0..samples {
        let x: f64 = rng.gen_range(-rmax..rmax);
        let y: f64 = rng.gen_range(-rmax..rmax);
        let r2 = x * x + y * y;
        let v = r2 * r2 - r2;
        if v < e {
            acc += 2.0 * PI * (e - v);
        }
    }
    acc / samples as f64 * (2.0 * rmax).powi(2)
}

pub fn quantum_spectrum(cfg: &RunConfig, out: &OutputDir) -> Result<Summary> {
    let names = ["joint_spectrum.csv", "joint_spectrum.svg", "quantum_spectrum.txt"];
    out.claim(&names)?;
    let q = &cfg.quantum;
    let js = joint_spectrum(q)?;
    let ps = perturbed_spectrum(&js, q.epsilon)?;
    let rows: Vec<Vec<Cell>> = js
        .iter()
        .zip(&ps)
        .map(|(p, c)| {
            vec![
                Cell::Int(p.m as i64),
                Cell::Int(p.n as i64),
                Cell::Float(p.energy),
                Cell::Float(p.j),
                Cell::Float(c.re),
                Cell::Float(c.im),
            ]
        })
        .collect();
    let mut files = vec![out.csv(names[0], &["m", "n", "E", "j", "re", "im"], &rows)?];

    let points: Vec<[f64; 2]> = js.iter().map(SpectrumPoint::point).collect();
    let boundary = boundary_points(q.e_max, cfg.curve_samples)?;
    let mut plot = Plot::fitted(boundary.iter().chain(&points));
    plot.polyline(&boundary, "#1f4e9c", 1.5, false);
    plot.dots(&points, "#222222", 2.0);
    let title = format!("Joint spectrum, h = {}", q.h);
    files.push(out.svg(names[1], &plot.finish(&title, "E", "j"))?);

    let m_max = js.iter().map(|p| p.m.abs()).max().unwrap_or(0);
    let weyl = energy_volume(q.e_max, cfg.weyl_samples, cfg.seed) / (2.0 * PI * q.h).powi(2);
    let lines = vec![
        format!("levels = {}", js.len()),
        format!("m_max = {m_max}"),
        format!("weyl_estimate = {weyl:.1}"),
    ];
    files.push(out.report(names[2], &lines)?);
    Ok(Summary { files, lines })
}

/// Vertices of the loop must keep this many `h` away from the focus-focus value.
const ORIGIN_CLEARANCE: f64 = 0.5;

fn check_clearance(lp: &EllipseLoop, h: f64) -> Result<()> {
    let d = lp.distance_to(EMValue::new(0.0, 0.0));
    if d < ORIGIN_CLEARANCE * h {
        return Err(CliError::Config(format!(
            "loop passes within {d:.3e} of (0, 0); keep at least {}h = {}",
            ORIGIN_CLEARANCE,
            ORIGIN_CLEARANCE * h
        )));
    }
    Ok(())
}

fn cell_corners(c: &champagne::lattice::LatticeCell) -> Vec<[f64; 2]> {
    c.corners().to_vec()
}

pub fn quantum_monodromy(cfg: &RunConfig, out: &OutputDir) -> Result<Summary> {
    let names = ["quantum_monodromy.txt", "transport_path.csv", "quantum_monodromy.svg"];
    out.claim(&names)?;
    let q = &cfg.quantum;
    let lp = cfg.ellipse(LoopKind::Quantum);
    lp.validate()?;
    check_clearance(&lp, q.h)?;

    let js = joint_spectrum(q)?;
    let cloud: Vec<[f64; 2]> = if cfg.spectral {
        spectral_lattice(&perturbed_spectrum(&js, q.epsilon)?, q.epsilon)?
    } else {
        js.iter().map(SpectrumPoint::point).collect()
    };
    let scale = LatticeScale::for_joint_spectrum(q.h);
    let res: TransportResult = lattice_monodromy(&cloud, &lp.points(), scale, &cfg.transport_options())?;
    let (trace, det, unipotent) = conjugacy_invariants(&res.matrix)?;
    let verdict = if res.matrix == IntMatrix2::IDENTITY {
        "trivial"
    } else {
        "nontrivial"
    };
    let source = if cfg.spectral {
        "spectral (chi^-1 of P_eps)"
    } else {
        "joint spectrum"
    };
    let lines = vec![
        format!("source = {source}"),
        format!("points = {}", cloud.len()),
        format!("monodromy = {}", matrix_line(&res.matrix)),
        format!(
            "raw = [[{:.6}, {:.6}], [{:.6}, {:.6}]]",
            res.raw[0][0], res.raw[0][1], res.raw[1][0], res.raw[1][1]
        ),
        format!("rounding_residual = {:.3e}", res.rounding_residual),
        format!("steps = {}", res.steps),
        format!("worst_snap_fraction = {:.3}", res.worst_fraction()),
        format!("invariants = trace {trace}, det {det}, unipotent {unipotent}"),
        format!("verdict = {verdict}"),
    ];
    let rows: Vec<Vec<Cell>> = res
        .path
        .iter()
        .enumerate()
        .map(|(i, p)| vec![Cell::Int(i as i64), Cell::Float(p[0]), Cell::Float(p[1])])
        .collect();
    let mut files = vec![
        out.report(names[0], &lines)?,
        out.csv(names[1], &["step", "E", "j"], &rows)?,
    ];

    let boundary = boundary_points(q.e_max, cfg.curve_samples)?;
    let mut plot = Plot::fitted(boundary.iter().chain(&cloud));
    plot.polyline(&boundary, "#1f4e9c", 1.5, false);
    plot.dots(&cloud, "#555555", 1.8);
    plot.polyline(&lp.points(), "#e67e22", 1.2, true);
    plot.polyline(&res.path, "#8e44ad", 1.2, false);
    plot.polygon(&cell_corners(&res.initial), "#27ae60", "#1e8449");
    plot.polygon(&cell_corners(&res.final_cell), "#c0392b", "#922b21");
    plot.label(res.initial.anchor, "initial", "#1e8449");
    plot.label(res.final_cell.corners()[2], "final", "#922b21");
    let title = format!("Quantum monodromy {}", matrix_line(&res.matrix));
    files.push(out.svg(names[2], &plot.finish(&title, "E", "j"))?);
    Ok(Summary { files, lines })
}

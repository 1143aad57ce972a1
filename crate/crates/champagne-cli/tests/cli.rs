use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn champagne(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_champagne"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Rows of a CSV written by the tool, header block skipped.
fn rows(path: &Path) -> (String, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().to_string();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, rows)
}

fn config_file(dir: &Path, text: &str) -> String {
    let path = dir.join("run.cfg");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn spectrum_csv_contract_and_determinism() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    assert_eq!(code(&champagne(&["quantum-spectrum", "--threads", "1"], a.path())), 0);
    assert_eq!(code(&champagne(&["quantum-spectrum", "--threads", "4"], b.path())), 0);
    let (header, data) = rows(&a.path().join("joint_spectrum.csv"));
    assert_eq!(header, "m,n,E,j,re,im");
    assert_eq!(data.len(), 119);
    for r in &data {
        assert_eq!(r.len(), 6);
        for x in &r[2..] {
            // 17 significant digits.
            let mantissa = x.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{x}");
        }
    }
    // Only the thread count differs between the two runs.
    for name in ["joint_spectrum.csv", "joint_spectrum.svg", "quantum_spectrum.txt"] {
        let x = fs::read_to_string(a.path().join(name))
            .unwrap()
            .replace("threads = 1", "");
        let y = fs::read_to_string(b.path().join(name))
            .unwrap()
            .replace("threads = 4", "");
        assert_eq!(x, y, "{name}");
    }
    let first = fs::read(a.path().join("joint_spectrum.csv")).unwrap();
    assert_eq!(
        code(&champagne(&["quantum-spectrum", "--threads", "1", "--force"], a.path())),
        0
    );
    assert_eq!(fs::read(a.path().join("joint_spectrum.csv")).unwrap(), first);
}

#[test]
fn every_output_starts_with_the_resolved_config() {
    let dir = TempDir::new().unwrap();
    let cfg = config_file(dir.path(), "h = 0.2\ngrid_n = 2000\n");
    let o = champagne(&["quantum-spectrum", "--config", &cfg, "--h", "0.1"], dir.path());
    assert_eq!(code(&o), 0, "{o:?}");
    for name in ["joint_spectrum.csv", "quantum_spectrum.txt"] {
        let text = fs::read_to_string(dir.path().join(name)).unwrap();
        assert!(text.starts_with("# champagne-cli "));
        // Flags win over the file; untouched file keys survive.
        assert!(
            text.contains("# h = 0.1\n") && text.contains("# grid_n = 2000\n"),
            "{text}"
        );
    }
    let svg = fs::read_to_string(dir.path().join("joint_spectrum.svg")).unwrap();
    assert!(svg.starts_with("<!--\n  champagne-cli "));
    assert!(svg.contains("  h = 0.1\n"));
}

#[test]
fn svgs_are_self_contained_and_small() {
    let dir = TempDir::new().unwrap();
    for cmd in [
        "classical-scan",
        "classical-monodromy",
        "quantum-spectrum",
        "quantum-monodromy",
    ] {
        assert_eq!(code(&champagne(&[cmd], dir.path())), 0, "{cmd}");
    }
    let mut count = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "svg") {
            let text = fs::read_to_string(&path).unwrap();
            assert!(text.len() < 5 * 1024 * 1024);
            assert!(!text.contains("href") && !text.contains("<image"), "{path:?}");
            assert!(text.trim_end().ends_with("</svg>"));
            count += 1;
        }
    }
    assert_eq!(count, 5);
}

#[test]
fn classical_scan_curve_and_potential() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&champagne(&["classical-scan"], dir.path())), 0);
    let (header, curve) = rows(&dir.path().join("critical_curve.csv"));
    assert_eq!(header, "r,E,j_plus,j_minus");
    let first: Vec<f64> = curve[0].iter().map(|x| x.parse().unwrap()).collect();
    assert!((first[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    assert!((first[1] + 0.25).abs() < 1e-12 && first[2].abs() < 1e-12 && first[3].abs() < 1e-12);

    let (header, pot) = rows(&dir.path().join("potential.csv"));
    assert_eq!(header, "r,V");
    let pts: Vec<(f64, f64)> = pot
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();
    let (r_min, v_min) = pts.iter().copied().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    let step = pts[1].0 - pts[0].0;
    assert!(v_min >= -0.25 && v_min < -0.25 + step * step);
    assert!((r_min - std::f64::consts::FRAC_1_SQRT_2).abs() <= step);
}

#[test]
fn missing_output_dir_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    let o = champagne(&["classical-scan"], &dir.path().join("nope"));
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not exist"));
}

#[test]
fn refuses_to_overwrite_without_force() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&champagne(&["classical-monodromy"], dir.path())), 0);
    let before = fs::read(dir.path().join("classical_monodromy.txt")).unwrap();
    let o = champagne(&["classical-monodromy"], dir.path());
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--force"));
    assert_eq!(code(&champagne(&["classical-monodromy", "--force"], dir.path())), 0);
    assert_eq!(fs::read(dir.path().join("classical_monodromy.txt")).unwrap(), before);
}

#[test]
fn classical_monodromy_reports() {
    let dir = TempDir::new().unwrap();
    let o = champagne(&["classical-monodromy"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("monodromy = [[1, 0], [1, 1]]"));
    assert!(stdout(&o).contains("verdict = nontrivial"));
    let o = champagne(
        &["classical-monodromy", "--loop", "non-enclosing", "--force"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("monodromy = [[1, 0], [0, 1]]"));
    assert!(stdout(&o).contains("verdict = trivial"));
}

#[test]
fn loop_across_the_boundary_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = config_file(dir.path(), "loop_semi_j = 3.0\n");
    let o = champagne(&["classical-monodromy", "--config", &cfg], dir.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a regular value"));
}

#[test]
fn quantum_monodromy_joint_and_spectral() {
    let dir = TempDir::new().unwrap();
    let joint = champagne(&["quantum-monodromy"], dir.path());
    assert_eq!(code(&joint), 0);
    let spectral = champagne(&["quantum-monodromy", "--spectral", "--force"], dir.path());
    assert_eq!(code(&spectral), 0);
    for o in [&joint, &spectral] {
        assert!(
            stdout(o).contains("invariants = trace 2, det 1, unipotent true"),
            "{}",
            stdout(o)
        );
    }
    let pick = |o: &Output| {
        stdout(o)
            .lines()
            .find(|l| l.starts_with("monodromy"))
            .unwrap()
            .to_string()
    };
    assert_eq!(pick(&joint), pick(&spectral));
    assert!(stdout(&spectral).contains("source = spectral"));
    let o = champagne(&["quantum-monodromy", "--loop", "non-enclosing", "--force"], dir.path());
    assert!(stdout(&o).contains("verdict = trivial"));
}

#[test]
fn quantum_loop_near_the_origin_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let cfg = config_file(
        dir.path(),
        "loop_center_e = 0.0\nloop_center_j = 0.0\nloop_semi_e = 0.02\nloop_semi_j = 0.02\n",
    );
    let o = champagne(&["quantum-monodromy", "--config", &cfg], dir.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("(0, 0)"));
}

#[test]
fn transport_off_the_spectrum_is_a_numerical_error() {
    let dir = TempDir::new().unwrap();
    let cfg = config_file(
        dir.path(),
        "loop_center_e = 1.2\nloop_center_j = 0.0\nloop_semi_e = 0.6\nloop_semi_j = 0.6\nloop_phase = 0\n",
    );
    let o = champagne(&["quantum-monodromy", "--config", &cfg], dir.path());
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn config_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    for text in ["hbar = 0.1\n", "grid_n = 10\n", "radius = 1.0\n", "loop = sideways\n"] {
        let cfg = config_file(dir.path(), text);
        let o = champagne(&["quantum-spectrum", "--config", &cfg], dir.path());
        assert_eq!(code(&o), 2, "{text}");
    }
    assert_eq!(code(&champagne(&["quantum-spectrum", "--mmax", "lots"], dir.path())), 2);
    assert_eq!(
        code(&champagne(
            &["quantum-monodromy", "--spectral", "--epsilon", "0"],
            dir.path()
        )),
        2
    );
    let missing = dir.path().join("absent.cfg");
    assert_eq!(
        code(&champagne(
            &["classical-scan", "--config", missing.to_str().unwrap()],
            dir.path()
        )),
        4
    );
}

#[test]
fn m_max_caps_the_sectors() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&champagne(&["quantum-spectrum", "--mmax", "3"], dir.path())), 0);
    let (_, data) = rows(&dir.path().join("joint_spectrum.csv"));
    let ms: Vec<i32> = data.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(*ms.iter().max().unwrap(), 3);
    assert_eq!(*ms.iter().min().unwrap(), -3);
}

/// Phase-space volume of `{H <= e}` in closed form: with `u = r²` the
/// configuration measure is `π du` and the momentum disc has area `2π (e - u² + u)`.
fn shell_volume(e: f64) -> f64 {
    let s = (1.0 + 4.0 * e).sqrt();
    let (lo, hi) = (((1.0 - s) / 2.0).max(0.0), (1.0 + s) / 2.0);
    let f = |u: f64| e * u - u.powi(3) / 3.0 + u * u / 2.0;
    2.0 * std::f64::consts::PI.powi(2) * (f(hi) - f(lo))
}

#[test]
fn weyl_estimate_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let weyl = |seed: &str| -> f64 {
        let o = champagne(&["quantum-spectrum", "--seed", seed, "--force"], dir.path());
        let line = stdout(&o)
            .lines()
            .find(|l| l.starts_with("weyl_estimate"))
            .unwrap()
            .to_string();
        line.split('=').nth(1).unwrap().trim().parse().unwrap()
    };
    let exact = shell_volume(1.5) / (2.0 * std::f64::consts::PI * 0.1).powi(2);
    let (a, b) = (weyl("1"), weyl("2"));
    assert_ne!(a, b);
    assert_eq!(a, weyl("1"));
    for w in [a, b] {
        assert!((w - exact).abs() < 0.02 * exact, "{w} vs {exact}");
    }
}

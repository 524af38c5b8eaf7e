//! Data behind the five published plots, with their caption parameters
//! fixed as presets.

use super::commands::{
    classical_samples, polar_mode_samples, push_mode_cross_sections, push_trajectory_rows, temple_mode_samples,
    CROSS_SECTION_HEADER, TRAJECTORY_HEADER,
};
use super::config::Format;
use super::table::{fmt_num, Cell, Table};
use super::CliError;
use crate::classical::{rutherford_cross_section, scattering_angle_classical, Scenario};
use crate::mode_polar::angular::dnu_w_theta_signed;
use crate::mode_polar::{geometric_grid, limiting_angle, scattering_angle_mode};
use std::f64::consts::PI;

/// One output file: name relative to the figure directory, and contents.
pub struct FigureFile {
    pub name: String,
    pub contents: String,
}

pub struct FigureOutput {
    pub files: Vec<FigureFile>,
    pub failures: Vec<String>,
}

struct TrajectoryPreset {
    figure: u8,
    nu: f64,
    ks: f64,
    caption: &'static str,
}

const FIG4: TrajectoryPreset = TrajectoryPreset {
    figure: 4,
    nu: 0.629,
    ks: 1.2,
    caption: "E=20 eV, Z=1, nu=0.629, ks=1.2, s=52.4pm, theta_sc=-69 deg",
};

const FIG5: TrajectoryPreset = TrajectoryPreset {
    figure: 5,
    nu: 1.2,
    ks: 1.79,
    caption: "E=20 eV, Z=1, nu=1.2, ks=1.79, theta_sc=-49.5 deg",
};

const TRAJECTORY_RHO_MIN: f64 = 1e-3;
const TRAJECTORY_RHO_MAX: f64 = 30.0;
const TRAJECTORY_POINTS: usize = 160;

pub fn figure(n: u8, format: Format) -> Result<FigureOutput, CliError> {
    let sc = |e: f64, z: i32| Scenario::new(e, z).map_err(|err| CliError::Config(err.to_string()));
    let mut failures = Vec::new();
    let mut tables: Vec<(String, Table)> = Vec::new();
    let plot = match n {
        1 => {
            tables.push(("fig1".into(), figure1(&mut failures)));
            "plot 'fig1' using 1:2 title 'nu=0.5', '' using 1:3 title 'nu=1.2', '' using 1:4 title 'theta'\n".to_string()
        }
        2 => {
            tables.push(("fig2".into(), figure2(&sc(20.0, 1)?, &mut failures)));
            "plot 'fig2' using 1:2 title 'classical', '' using 3:4 title 'mode'\n".to_string()
        }
        3 => {
            tables.push(("fig3".into(), figure3(&sc(2000.0, 6)?, &mut failures)));
            "set logscale y\nplot 'fig3' using 3:4 title 'mode' if series=='mode', '' using 3:4 title 'rutherford' if series=='rutherford'\n"
                .to_string()
        }
        4 | 5 => {
            let preset = if n == 4 { &FIG4 } else { &FIG5 };
            let (traj, tau_arc) = trajectory_figure(&sc(20.0, 1)?, preset, &mut failures);
            tables.push((format!("fig{n}"), traj));
            tables.push((format!("fig{n}_tau_arc"), tau_arc));
            format!(
                "set size ratio -1\nplot 'fig{n}' using 4:5 by series (polar-mode, temple-mode with gap_flag breaks, classical)\n\
                 plot 'fig{n}_tau_arc' using 2:3 by series\n"
            )
        }
        _ => return Err(CliError::Config(format!("figure must be 1 to 5, got {n}"))),
    };
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut files: Vec<FigureFile> = tables
        .iter()
        .map(|(name, t)| FigureFile {
            name: format!("{name}.{ext}"),
            contents: t.render(format),
        })
        .collect();
    files.push(FigureFile {
        name: format!("fig{n}.plot"),
        contents: format!("# plot script stub; data files use extension .{ext}\n{plot}"),
    });
    Ok(FigureOutput { files, failures })
}

fn figure1(failures: &mut Vec<String>) -> Table {
    let mut t = Table::new(&["theta_rad", "dnu_w_theta_nu_0.5", "dnu_w_theta_nu_1.2", "theta"]);
    t.comment("dnu W_theta(theta, nu) against theta; the two curves should lie close to the diagonal");
    t.comment("tolerance: max deviation from theta over (0.3, pi-0.3) within the regression bound of the test suite");
    let n = 179;
    for i in 1..=n {
        let theta = PI * i as f64 / (n + 1) as f64;
        let mut row: Vec<Cell> = vec![theta.into()];
        for nu in [0.5, 1.2] {
            match dnu_w_theta_signed(theta, nu) {
                Ok(v) => row.push(v.into()),
                Err(e) => {
                    failures.push(format!("fig1 theta={} nu={nu}: {e}", fmt_num(theta)));
                    row.push(f64::NAN.into());
                }
            }
        }
        row.push(theta.into());
        t.push(row);
    }
    t
}

fn figure2(sc: &Scenario, failures: &mut Vec<String>) -> Table {
    let mut t = Table::new(&["ks", "theta_sc_classical_deg", "nu_plus_half", "theta_sc_mode_deg", "difference_deg"]);
    t.comment("E=20 eV, Z=1; mode at nu = ks - 1/2 against the classical orbit at ks");
    t.comment("tolerance: |difference| <= 2 deg over ks in [0.5, 6]");
    let n = 56;
    for i in 0..n {
        let ks = 0.5 + 5.5 * i as f64 / (n - 1) as f64;
        let classical = scattering_angle_classical(sc, ks).to_degrees();
        let mode = match scattering_angle_mode(sc, ks - 0.5) {
            Ok(a) => a.signed.to_degrees(),
            Err(e) => {
                failures.push(format!("fig2 nu={}: {e}", fmt_num(ks - 0.5)));
                f64::NAN
            }
        };
        t.push(vec![ks.into(), classical.into(), ks.into(), mode.into(), (mode - classical).into()]);
    }
    t
}

fn figure3(sc: &Scenario, failures: &mut Vec<String>) -> Table {
    let mut modes = Table::new(&CROSS_SECTION_HEADER);
    let nus: Vec<f64> = (0..=240).map(|i| i as f64 * 0.25).collect();
    push_mode_cross_sections(&mut modes, sc, &nus, failures);
    let mut t = Table::new(&["series", "nu", "theta_sc_deg", "sigma_inv_k2", "sigma_pm2"]);
    t.comment("E=2000 eV, Z=6; mode cross section over a nu grid against the Rutherford formula");
    t.comment("tolerance: mode within 5% of Rutherford for |theta_sc| in [20, 150] deg");
    match limiting_angle(sc) {
        Ok(a) => t.comment(format!("mode curve ends at the limiting angle {} deg (nu = 0)", fmt_num(a.signed.to_degrees()))),
        Err(e) => failures.push(format!("fig3 limiting angle: {e}")),
    }
    for row in modes.rows {
        t.push(vec!["mode".into(), row[0].clone(), row[2].clone(), row[3].clone(), row[4].clone()]);
    }
    let sign = -(sc.z.signum() as f64);
    for i in 0..=175 {
        let theta = sign * (5.0 + i as f64).to_radians();
        match rutherford_cross_section(sc, theta) {
            Ok(s) => t.push(vec![
                "rutherford".into(),
                f64::NAN.into(),
                theta.to_degrees().into(),
                s.sigma_inv_k2.into(),
                s.sigma_pm2.into(),
            ]),
            Err(e) => failures.push(format!("fig3 rutherford: {e}")),
        }
    }
    t
}

fn trajectory_figure(sc: &Scenario, p: &TrajectoryPreset, failures: &mut Vec<String>) -> (Table, Table) {
    let grid = geometric_grid(TRAJECTORY_RHO_MIN, TRAJECTORY_RHO_MAX, TRAJECTORY_POINTS);
    let mut t = Table::new(&TRAJECTORY_HEADER);
    t.comment(format!("figure {} preset: {}", p.figure, p.caption));
    t.comment(format!(
        "derived: k={} /pm, eta_s={}, s={} pm",
        fmt_num(sc.k),
        fmt_num(sc.eta_s),
        fmt_num(sc.impact_parameter_pm(p.ks))
    ));
    t.comment(format!(
        "classical theta_sc={} deg (tolerance 0.05 deg)",
        fmt_num(scattering_angle_classical(sc, p.ks).to_degrees())
    ));
    match scattering_angle_mode(sc, p.nu) {
        Ok(a) => t.comment(format!("polar-mode theta_sc={} deg (tolerance 1 deg)", fmt_num(a.signed.to_degrees()))),
        Err(e) => failures.push(format!("fig{} mode angle: {e}", p.figure)),
    }
    t.comment("temple-mode rows with gap_flag=1 are grid values where the branch equation has no root");
    t.comment("tau: polar-mode and classical are zero at the returning point; temple-mode is the raw phase derivative");
    let series = [
        ("polar-mode", polar_mode_samples(sc, p.nu, &grid, failures)),
        ("temple-mode", temple_mode_samples(sc, p.ks, &grid, failures)),
        ("classical", classical_samples(sc, p.ks, &grid, failures)),
    ];
    for (name, samples) in &series {
        push_trajectory_rows(&mut t, sc, name, samples);
    }
    let mut arc = Table::new(&["series", "arc_pm", "tau", "t_seconds", "branch"]);
    arc.comment(format!("figure {} time along the path against arc length", p.figure));
    for row in t.rows.iter().filter(|r| r[8] == Cell::Int(0)) {
        arc.push(vec![row[0].clone(), row[9].clone(), row[5].clone(), row[6].clone(), row[7].clone()]);
    }
    (t, arc)
}

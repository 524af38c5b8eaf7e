//! Physical constants (CODATA 2018) in eV / pm / s units.

/// Electron rest energy mc² in eV.
pub const MC2_EV: f64 = 510_998.95;
/// ħc in eV·pm.
pub const HBARC_EV_PM: f64 = 197_326.980_4;
/// Fine-structure constant.
pub const ALPHA: f64 = 7.297_352_569_3e-3;
/// e² = αħc in eV·pm.
pub const E2_EV_PM: f64 = ALPHA * HBARC_EV_PM;
/// Speed of light in pm/s.
pub const C_PM_PER_S: f64 = 2.997_924_58e20;
/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

//! Parametric synthesis of three-phase PCC voltage waveforms.
//!
//! Instead of an electromagnetic-transient circuit simulation, waveforms are
//! built from balanced per-unit sinusoids plus three layers of structure:
//!
//! * source coloring — wind turbines add a slow amplitude ripple that tracks
//!   their mechanical power output, PV inverters inject a small second
//!   harmonic and a faint switching residue;
//! * disturbance templates — faults sag the faulted phases to a retained
//!   voltage with ringdown transients at onset and clearance plus sustained
//!   arc noise, while islanding drifts frequency and amplitude and raises
//!   harmonic/switching distortion across all phases with a breaker
//!   transient at onset;
//! * seeded white noise.
//!
//! Everything is a deterministic function of the [`Scenario`], so the same
//! scenario always reproduces the same waveform bit for bit.

mod sources;

pub use sources::{
    pv_current, tip_speed_ratio, wind_power, CpCoefficients, CpCurve, PvParams,
    WindTurbineParams, BETZ_LIMIT,
};

use crate::error::Error;
use crate::EventKind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

// ---------------------------------------------------------------------------
// Scenario description
// ---------------------------------------------------------------------------

/// One distributed-generation source attached to the monitored bus.
#[derive(Debug, Clone, PartialEq)]
pub enum DgSource {
    Wind {
        params: WindTurbineParams,
        /// Fraction of bus load served by this source, in [0, 1].
        penetration: f64,
    },
    Pv {
        params: PvParams,
        penetration: f64,
    },
}

impl DgSource {
    pub fn penetration(&self) -> f64 {
        match self {
            DgSource::Wind { penetration, .. } | DgSource::Pv { penetration, .. } => *penetration,
        }
    }

    /// Wind source with default turbine parameters.
    pub fn wind(penetration: f64) -> Self {
        DgSource::Wind {
            params: WindTurbineParams::default(),
            penetration,
        }
    }

    /// PV source with default module parameters.
    pub fn pv(penetration: f64) -> Self {
        DgSource::Pv {
            params: PvParams::default(),
            penetration,
        }
    }
}

/// Disturbance injected into a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Disturbance {
    None,
    Islanding,
    FaultAG,
    FaultBG,
    FaultCG,
    FaultAB,
    FaultBC,
    FaultCA,
    FaultABG,
    FaultABC,
}

impl Disturbance {
    /// Ground-truth class this disturbance belongs to.
    pub fn kind(&self) -> EventKind {
        match self {
            Disturbance::None => EventKind::Normal,
            Disturbance::Islanding => EventKind::Islanding,
            _ => EventKind::Fault,
        }
    }

    /// Channel indices of the faulted phases (empty for non-faults).
    pub fn faulted_phases(&self) -> &'static [usize] {
        match self {
            Disturbance::FaultAG => &[0],
            Disturbance::FaultBG => &[1],
            Disturbance::FaultCG => &[2],
            Disturbance::FaultAB | Disturbance::FaultABG => &[0, 1],
            Disturbance::FaultBC => &[1, 2],
            Disturbance::FaultCA => &[2, 0],
            Disturbance::FaultABC => &[0, 1, 2],
            Disturbance::None | Disturbance::Islanding => &[],
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Disturbance::None => "none",
            Disturbance::Islanding => "islanding",
            Disturbance::FaultAG => "ag",
            Disturbance::FaultBG => "bg",
            Disturbance::FaultCG => "cg",
            Disturbance::FaultAB => "ab",
            Disturbance::FaultBC => "bc",
            Disturbance::FaultCA => "ca",
            Disturbance::FaultABG => "abg",
            Disturbance::FaultABC => "abc",
        }
    }
}

impl fmt::Display for Disturbance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Disturbance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(Disturbance::None),
            "islanding" => Ok(Disturbance::Islanding),
            "ag" => Ok(Disturbance::FaultAG),
            "bg" => Ok(Disturbance::FaultBG),
            "cg" => Ok(Disturbance::FaultCG),
            "ab" => Ok(Disturbance::FaultAB),
            "bc" => Ok(Disturbance::FaultBC),
            "ca" => Ok(Disturbance::FaultCA),
            "abg" => Ok(Disturbance::FaultABG),
            "abc" => Ok(Disturbance::FaultABC),
            other => Err(Error::InvalidConfig(format!("unknown disturbance `{other}`"))),
        }
    }
}

/// Declarative description of one synthesis case.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Stable identifier used for file names and report rows.
    pub label: String,
    /// Monitored bus number (11-14 mirror the study network).
    pub bus_id: u32,
    pub dg_mix: Vec<DgSource>,
    pub disturbance: Disturbance,
    /// Event start, seconds.
    pub onset: f64,
    /// Event length, seconds.
    pub duration: f64,
    /// Fundamental frequency, Hz.
    pub nominal_frequency: f64,
    /// Sampling rate, Hz; at least 32 samples per fundamental cycle.
    pub sample_rate: f64,
    /// Signal length, seconds.
    pub total_duration: f64,
    /// Additive white noise level, per unit.
    pub noise_std: f64,
    pub seed: u64,
}

impl Scenario {
    /// Scenario with the stock timing defaults: 3200 Hz sampling of a 50 Hz
    /// system for 1 s, event at 0.61 s for 0.3 s, 0.001 p.u. noise.
    pub fn with_defaults(
        label: impl Into<String>,
        bus_id: u32,
        dg_mix: Vec<DgSource>,
        disturbance: Disturbance,
        seed: u64,
    ) -> Self {
        Scenario {
            label: label.into(),
            bus_id,
            dg_mix,
            disturbance,
            onset: 0.61,
            duration: 0.3,
            nominal_frequency: 50.0,
            sample_rate: 3200.0,
            total_duration: 1.0,
            noise_std: 0.001,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::ScenarioInvalid(msg));
        if self.label.is_empty() {
            return bad("label must not be empty".into());
        }
        for v in [
            self.onset,
            self.duration,
            self.nominal_frequency,
            self.sample_rate,
            self.total_duration,
            self.noise_std,
        ] {
            if !v.is_finite() {
                return bad(format!("non-finite field in `{}`", self.label));
            }
        }
        if self.onset < 0.0 || self.duration <= 0.0 {
            return bad(format!(
                "onset {} / duration {} out of range",
                self.onset, self.duration
            ));
        }
        if self.onset + self.duration > self.total_duration {
            return bad(format!(
                "event [{}, {}) exceeds total duration {}",
                self.onset,
                self.onset + self.duration,
                self.total_duration
            ));
        }
        if self.nominal_frequency <= 0.0 {
            return bad(format!("nominal frequency {}", self.nominal_frequency));
        }
        if self.sample_rate < 32.0 * self.nominal_frequency {
            return bad(format!(
                "sample rate {} below 32x nominal frequency {}",
                self.sample_rate, self.nominal_frequency
            ));
        }
        if self.noise_std < 0.0 {
            return bad(format!("negative noise_std {}", self.noise_std));
        }
        let mut total_pen = 0.0;
        for src in &self.dg_mix {
            let pen = src.penetration();
            if !(0.0..=1.0).contains(&pen) {
                return bad(format!("penetration {pen} outside [0, 1]"));
            }
            total_pen += pen;
        }
        if total_pen > 1.0 + 1e-9 {
            return bad(format!("total DG penetration {total_pen} exceeds 1"));
        }
        Ok(())
    }

    /// Number of samples the synthesized waveform will contain.
    pub fn n_samples(&self) -> usize {
        (self.total_duration * self.sample_rate).round() as usize
    }

    /// Event onset expressed as a sample index.
    pub fn onset_sample(&self) -> usize {
        (self.onset * self.sample_rate).round() as usize
    }
}

/// Ground-truth annotation carried by synthesized waveforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EventLabel {
    pub kind: EventKind,
    /// Absent exactly when `kind` is [`EventKind::Normal`].
    pub onset_sample: Option<usize>,
}

/// Uniformly sampled three-phase voltage signal in per unit.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    pub sample_rate: f64,
    /// Per-unit base the channels are normalized to.
    pub base_voltage: f64,
    /// Phase a, b, c sample arrays of equal length.
    pub channels: [Vec<f64>; 3],
    pub labels: Option<EventLabel>,
}

impl Waveform {
    pub fn len(&self) -> usize {
        self.channels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sample-wise mean of the three phases.
    pub fn mean_channel(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| (self.channels[0][i] + self.channels[1][i] + self.channels[2][i]) / 3.0)
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Disturbance template tuning
// ---------------------------------------------------------------------------

/// Magnitudes and spectral placement of the disturbance templates.
///
/// Frequencies are expressed as fractions of the sample rate so the fault
/// signature sits near the lower edge of the level-1 detail band and the
/// islanding distortion sits near Nyquist, where the Haar branch responds
/// most strongly.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthTuning {
    /// Voltage retained on faulted phases during the sag, per unit.
    pub fault_retained_pu: f64,
    /// Peak of the onset/clearance ringdown on faulted phases.
    pub fault_transient_amp: f64,
    /// Ringdown frequency as a fraction of the sample rate.
    pub fault_transient_freq_frac: f64,
    /// Ringdown decay constant, seconds.
    pub fault_transient_tau: f64,
    /// Sustained arc-noise amplitude on faulted phases during the sag.
    pub fault_arc_amp: f64,
    pub fault_arc_freq_frac: f64,
    /// Frequency drift accumulated across an islanding event, Hz.
    pub islanding_freq_drift_hz: f64,
    /// Relative amplitude drift across an islanding event (signed).
    pub islanding_amp_drift: f64,
    /// Primary switching-distortion amplitude during islanding.
    pub islanding_distortion_amp: f64,
    pub islanding_distortion_freq_frac: f64,
    /// Secondary switching-distortion amplitude during islanding.
    pub islanding_distortion2_amp: f64,
    pub islanding_distortion2_freq_frac: f64,
    /// Breaker-opening transient peak at islanding onset (all phases).
    pub islanding_transient_amp: f64,
    /// Third/fifth-harmonic amplitudes added during islanding.
    pub islanding_harmonic3: f64,
    pub islanding_harmonic5: f64,
    /// Amplitude ripple per unit of normalized wind-power deviation.
    pub wind_ripple_gain: f64,
    /// PV second-harmonic injection gain.
    pub pv_harmonic_gain: f64,
    /// PV switching-residue gain (healthy operation).
    pub pv_switching_gain: f64,
}

impl Default for SynthTuning {
    fn default() -> Self {
        SynthTuning {
            fault_retained_pu: 0.3,
            fault_transient_amp: 0.3,
            fault_transient_freq_frac: 0.28,
            fault_transient_tau: 0.005,
            fault_arc_amp: 0.06,
            fault_arc_freq_frac: 0.28,
            islanding_freq_drift_hz: 1.5,
            islanding_amp_drift: -0.10,
            islanding_distortion_amp: 0.055,
            islanding_distortion_freq_frac: 0.45,
            islanding_distortion2_amp: 0.04,
            islanding_distortion2_freq_frac: 0.48,
            islanding_transient_amp: 0.18,
            islanding_harmonic3: 0.03,
            islanding_harmonic5: 0.02,
            wind_ripple_gain: 0.02,
            pv_harmonic_gain: 0.01,
            pv_switching_gain: 0.0015,
        }
    }
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

const PHASE_OFFSETS: [f64; 3] = [0.0, -2.0 * PI / 3.0, 2.0 * PI / 3.0];

/// Rotor speed assumed for the wind operating point, rad/s.
const WIND_OMEGA_R: f64 = 2.0;
/// Mean wind speed of the slow fluctuation model, m/s.
const WIND_MEAN_SPEED: f64 = 9.0;
/// PV operating voltage as a fraction of open-circuit voltage.
const PV_OPERATING_POINT: f64 = 0.8;

struct WindState {
    penetration: f64,
    params: WindTurbineParams,
    mean_power: f64,
    phase_a: f64,
    phase_b: f64,
}

struct PvState {
    penetration: f64,
    op_frac: f64,
    phase: f64,
    switching_phase: f64,
}

/// Synthesizes a scenario with the default template tuning.
pub fn synthesize(scenario: &Scenario) -> Result<Waveform, Error> {
    synthesize_with(scenario, &SynthTuning::default())
}

/// Synthesizes a scenario with explicit template tuning.
pub fn synthesize_with(scenario: &Scenario, tuning: &SynthTuning) -> Result<Waveform, Error> {
    scenario.validate()?;
    let n = scenario.n_samples();
    let dt = 1.0 / scenario.sample_rate;
    let f0 = scenario.nominal_frequency;
    let fs = scenario.sample_rate;
    let onset = scenario.onset;
    let clearance = scenario.onset + scenario.duration;

    // Independent random streams so the amount of randomness one layer
    // consumes never shifts another layer (pre-onset purity depends on it).
    let mut src_rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    src_rng.set_stream(0);
    let mut dist_rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    dist_rng.set_stream(1);
    let mut noise_rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    noise_rng.set_stream(2);

    // Source operating points and per-source random phases.
    let mut winds = Vec::new();
    let mut pvs = Vec::new();
    for src in &scenario.dg_mix {
        match src {
            DgSource::Wind { params, penetration } => {
                let mean_power = wind_power(params, WIND_MEAN_SPEED, WIND_OMEGA_R);
                winds.push(WindState {
                    penetration: *penetration,
                    params: params.clone(),
                    mean_power,
                    phase_a: src_rng.gen::<f64>() * 2.0 * PI,
                    phase_b: src_rng.gen::<f64>() * 2.0 * PI,
                });
            }
            DgSource::Pv { params, penetration } => {
                let v_op = PV_OPERATING_POINT * params.open_circuit_voltage();
                let i_op = pv_current(params, v_op)?;
                let op_frac = if params.i_light > 0.0 {
                    (i_op / params.i_light).clamp(0.0, 1.0)
                } else {
                    0.0
                };
                pvs.push(PvState {
                    penetration: *penetration,
                    op_frac,
                    phase: src_rng.gen::<f64>() * 2.0 * PI,
                    switching_phase: src_rng.gen::<f64>() * 2.0 * PI,
                });
            }
        }
    }

    // Disturbance random phases, drawn from the dedicated stream.
    let faulted = scenario.disturbance.faulted_phases();
    let is_fault = !faulted.is_empty();
    let is_islanding = scenario.disturbance == Disturbance::Islanding;
    let mut arc_phases = [0.0f64; 3];
    let mut dist_phase_a = 0.0;
    let mut dist_phase_b = 0.0;
    let mut harm3_phase = 0.0;
    let mut harm5_phase = 0.0;
    if is_fault {
        for p in &mut arc_phases {
            *p = dist_rng.gen::<f64>() * 2.0 * PI;
        }
    } else if is_islanding {
        dist_phase_a = dist_rng.gen::<f64>() * 2.0 * PI;
        dist_phase_b = dist_rng.gen::<f64>() * 2.0 * PI;
        harm3_phase = dist_rng.gen::<f64>() * 2.0 * PI;
        harm5_phase = dist_rng.gen::<f64>() * 2.0 * PI;
    }

    let f_tr = tuning.fault_transient_freq_frac * fs;
    let f_arc = tuning.fault_arc_freq_frac * fs;
    let f_d1 = tuning.islanding_distortion_freq_frac * fs;
    let f_d2 = tuning.islanding_distortion2_freq_frac * fs;

    let mut channels = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    // Fundamental phase integrates the instantaneous frequency so the
    // islanding drift stays phase-continuous.
    let mut theta = 0.0f64;
    for i in 0..n {
        let t = i as f64 * dt;
        let in_event = t >= onset && t < clearance;
        let ramp = if in_event {
            (t - onset) / scenario.duration
        } else {
            0.0
        };

        let freq = if is_islanding && in_event {
            f0 + tuning.islanding_freq_drift_hz * ramp
        } else {
            f0
        };

        // Slow source amplitude modulation, identical for every phase.
        let mut amp_sources = 1.0;
        for w in &winds {
            let v_wind = WIND_MEAN_SPEED
                + 0.8 * (2.0 * PI * 0.9 * t + w.phase_a).sin()
                + 0.5 * (2.0 * PI * 2.1 * t + w.phase_b).sin();
            let power = wind_power(&w.params, v_wind, WIND_OMEGA_R);
            if w.mean_power > 0.0 {
                amp_sources +=
                    tuning.wind_ripple_gain * w.penetration * (power / w.mean_power - 1.0);
            }
        }

        for (ch, channel) in channels.iter_mut().enumerate() {
            let phase = theta + PHASE_OFFSETS[ch];
            let mut amp = amp_sources;
            let mut add = 0.0;

            for pv in &pvs {
                let gain = pv.penetration * pv.op_frac;
                add += tuning.pv_harmonic_gain
                    * gain
                    * (2.0 * phase + pv.phase).sin();
                add += tuning.pv_switching_gain
                    * gain
                    * (2.0 * PI * 0.45 * fs * t + pv.switching_phase + PHASE_OFFSETS[ch]).sin();
            }

            if is_fault {
                if in_event && faulted.contains(&ch) {
                    amp *= tuning.fault_retained_pu;
                    add += tuning.fault_arc_amp
                        * (2.0 * PI * f_arc * (t - onset) + arc_phases[ch]).sin();
                }
                if faulted.contains(&ch) {
                    if t >= onset {
                        let dt_on = t - onset;
                        add += tuning.fault_transient_amp
                            * (-dt_on / tuning.fault_transient_tau).exp()
                            * (2.0 * PI * f_tr * dt_on).cos();
                    }
                    if t >= clearance {
                        let dt_off = t - clearance;
                        add += 0.6
                            * tuning.fault_transient_amp
                            * (-dt_off / tuning.fault_transient_tau).exp()
                            * (2.0 * PI * f_tr * dt_off).cos();
                    }
                }
            } else if is_islanding {
                if in_event {
                    amp *= 1.0 + tuning.islanding_amp_drift * ramp;
                    let te = t - onset;
                    add += tuning.islanding_distortion_amp
                        * (2.0 * PI * f_d1 * te + dist_phase_a + PHASE_OFFSETS[ch]).sin();
                    add += tuning.islanding_distortion2_amp
                        * (2.0 * PI * f_d2 * te + dist_phase_b + PHASE_OFFSETS[ch]).sin();
                    add += tuning.islanding_harmonic3 * (3.0 * phase + harm3_phase).sin();
                    add += tuning.islanding_harmonic5 * (5.0 * phase + harm5_phase).sin();
                }
                if t >= onset {
                    let dt_on = t - onset;
                    add += tuning.islanding_transient_amp
                        * (-dt_on / tuning.fault_transient_tau).exp()
                        * (2.0 * PI * f_tr * dt_on).cos();
                }
            }

            channel[i] = amp * phase.sin() + add;
        }
        theta += 2.0 * PI * freq * dt;
    }

    if scenario.noise_std > 0.0 {
        for channel in &mut channels {
            for sample in channel.iter_mut() {
                let g: f64 = noise_rng.sample(StandardNormal);
                *sample += scenario.noise_std * g;
            }
        }
    }

    let kind = scenario.disturbance.kind();
    let labels = Some(EventLabel {
        kind,
        onset_sample: if kind == EventKind::Normal {
            None
        } else {
            Some(scenario.onset_sample())
        },
    });

    Ok(Waveform {
        sample_rate: scenario.sample_rate,
        base_voltage: 1.0,
        channels,
        labels,
    })
}

// ---------------------------------------------------------------------------
// Scenario catalog
// ---------------------------------------------------------------------------

fn bus_mix(bus_id: u32) -> Vec<DgSource> {
    match bus_id {
        11 => vec![DgSource::wind(0.25), DgSource::pv(0.20)],
        12 => vec![DgSource::pv(0.40)],
        13 => vec![DgSource::wind(0.40)],
        _ => vec![DgSource::pv(0.30)],
    }
}

/// The twelve-case study catalog: six fault rows (bus and fault type pairs)
/// and one islanding twin per row at the same bus, with fixed seeds.
///
/// Faults come first, then the paired islanding cases in the same order, so
/// `catalog()[i]` and `catalog()[i + 6]` form a pair.
pub fn catalog() -> Vec<Scenario> {
    let rows: [(u32, Disturbance, f64, f64); 6] = [
        (11, Disturbance::FaultAG, 0.20, 0.36),
        (12, Disturbance::FaultBG, 0.16, 0.32),
        (13, Disturbance::FaultCG, 0.24, 0.38),
        (11, Disturbance::FaultAB, 0.18, 0.34),
        (12, Disturbance::FaultBC, 0.22, 0.33),
        (13, Disturbance::FaultCA, 0.20, 0.37),
    ];

    let mut scenarios = Vec::with_capacity(12);
    for (i, (bus, fault, fault_dur, _)) in rows.iter().enumerate() {
        let mut sc = Scenario::with_defaults(
            format!("bus{bus}_{}_fault", fault.as_str()),
            *bus,
            bus_mix(*bus),
            *fault,
            101 + i as u64,
        );
        sc.duration = *fault_dur;
        scenarios.push(sc);
    }
    for (i, (bus, fault, _, isl_dur)) in rows.iter().enumerate() {
        let mut sc = Scenario::with_defaults(
            format!("bus{bus}_{}_islanding", fault.as_str()),
            *bus,
            bus_mix(*bus),
            Disturbance::Islanding,
            201 + i as u64,
        );
        sc.duration = *isl_dur;
        scenarios.push(sc);
    }
    scenarios
}

/// Disturbance-free scenarios for gate calibration, one per bus starting at
/// bus 11.
pub fn normal_scenarios(count: usize) -> Vec<Scenario> {
    (0..count)
        .map(|i| {
            let bus = 11 + (i as u32 % 4);
            Scenario::with_defaults(
                format!("normal_{:02}", i + 1),
                bus,
                bus_mix(bus),
                Disturbance::None,
                901 + i as u64,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bare_scenario(disturbance: Disturbance) -> Scenario {
        let mut sc = Scenario::with_defaults("test", 14, vec![], disturbance, 7);
        sc.noise_std = 0.0;
        sc
    }

    #[test]
    fn clean_nominal_synthesis_is_balanced_unit_sinusoids() {
        let sc = bare_scenario(Disturbance::None);
        let w = synthesize(&sc).unwrap();
        assert_eq!(w.len(), 3200);
        for channel in &w.channels {
            let rms = (channel.iter().map(|v| v * v).sum::<f64>() / channel.len() as f64).sqrt();
            assert!(
                (rms - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6,
                "rms = {rms}"
            );
        }
    }

    #[test]
    fn same_seed_reproduces_bit_identical_waveforms() {
        let sc = Scenario::with_defaults(
            "repeat",
            12,
            vec![DgSource::wind(0.3), DgSource::pv(0.2)],
            Disturbance::FaultBC,
            42,
        );
        let a = synthesize(&sc).unwrap();
        let b = synthesize(&sc).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pre_onset_samples_match_the_undisturbed_synthesis() {
        let mut disturbed = Scenario::with_defaults(
            "ev",
            13,
            vec![DgSource::wind(0.4)],
            Disturbance::Islanding,
            9,
        );
        disturbed.noise_std = 0.0;
        let mut quiet = disturbed.clone();
        quiet.disturbance = Disturbance::None;

        let wd = synthesize(&disturbed).unwrap();
        let wq = synthesize(&quiet).unwrap();
        let onset = disturbed.onset_sample();
        for ch in 0..3 {
            assert_eq!(
                wd.channels[ch][..onset],
                wq.channels[ch][..onset],
                "channel {ch} differs before onset"
            );
        }
    }

    #[test]
    fn fault_sags_the_faulted_phase_and_steps_at_onset() {
        let sc = bare_scenario(Disturbance::FaultAG);
        let w = synthesize(&sc).unwrap();
        let onset = sc.onset_sample();
        let end = onset + (sc.duration * sc.sample_rate) as usize;
        let rms = |ch: usize| {
            let window = &w.channels[ch][onset..end];
            (window.iter().map(|v| v * v).sum::<f64>() / window.len() as f64).sqrt()
        };
        assert!(rms(0) < rms(1), "a = {}, b = {}", rms(0), rms(1));
        assert!(rms(0) < rms(2), "a = {}, c = {}", rms(0), rms(2));

        // The onset ringdown produces a sample-to-sample step well above the
        // fundamental's slope.
        let step = (w.channels[0][onset] - w.channels[0][onset - 1]).abs();
        assert!(step > 0.15, "onset step = {step}");
    }

    #[test]
    fn islanding_modulates_without_a_sharp_sag() {
        let sc = bare_scenario(Disturbance::Islanding);
        let w = synthesize(&sc).unwrap();
        let onset = sc.onset_sample();
        let end = onset + (sc.duration * sc.sample_rate) as usize;
        // Event-window RMS stays near nominal: drift, not collapse.
        for ch in 0..3 {
            let window = &w.channels[ch][onset..end];
            let rms = (window.iter().map(|v| v * v).sum::<f64>() / window.len() as f64).sqrt();
            assert!(rms > 0.6, "channel {ch} rms {rms}");
        }
    }

    #[test]
    fn scenario_invariants_are_enforced() {
        let mut sc = Scenario::with_defaults("bad", 11, vec![], Disturbance::None, 1);
        sc.onset = 0.9;
        sc.duration = 0.2;
        assert!(matches!(
            synthesize(&sc),
            Err(Error::ScenarioInvalid(_))
        ));

        let mut sc = Scenario::with_defaults("bad", 11, vec![], Disturbance::None, 1);
        sc.sample_rate = 1000.0; // below 32 x 50 Hz
        assert!(matches!(sc.validate(), Err(Error::ScenarioInvalid(_))));

        let sc = Scenario::with_defaults("bad", 11, vec![DgSource::pv(1.5)], Disturbance::None, 1);
        assert!(matches!(sc.validate(), Err(Error::ScenarioInvalid(_))));
    }

    #[test]
    fn catalog_has_six_paired_rows() {
        let cat = catalog();
        assert_eq!(cat.len(), 12);
        for sc in &cat {
            sc.validate().unwrap();
        }
        for i in 0..6 {
            assert_eq!(cat[i].disturbance.kind(), EventKind::Fault);
            assert_eq!(cat[i + 6].disturbance.kind(), EventKind::Islanding);
            assert_eq!(cat[i].bus_id, cat[i + 6].bus_id);
        }
        // Deterministic across calls.
        assert_eq!(cat, catalog());
    }

    #[test]
    fn labels_follow_the_disturbance_kind() {
        let sc = bare_scenario(Disturbance::FaultCA);
        let w = synthesize(&sc).unwrap();
        let label = w.labels.unwrap();
        assert_eq!(label.kind, EventKind::Fault);
        assert_eq!(label.onset_sample, Some(1952));

        let sc = bare_scenario(Disturbance::None);
        let w = synthesize(&sc).unwrap();
        let label = w.labels.unwrap();
        assert_eq!(label.kind, EventKind::Normal);
        assert_eq!(label.onset_sample, None);
    }

    #[test]
    fn normal_scenarios_are_valid_and_labeled() {
        let normals = normal_scenarios(2);
        assert_eq!(normals.len(), 2);
        for sc in &normals {
            sc.validate().unwrap();
            assert_eq!(sc.disturbance, Disturbance::None);
        }
        assert_eq!(normals[0].label, "normal_01");
    }
}

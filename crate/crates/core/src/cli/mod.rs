//! Command-line front end. The `hqc` binary forwards to [`run`].
//!
//! Exit codes: 0 success, 1 known-answer mismatch, 2 usage or format error,
//! 3 I/O error, 4 ciphertext rejected.

pub mod kat;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use rand::rngs::OsRng;
use rand::TryRngCore;
use thiserror::Error;

use crate::costmodel::{
    costmodel_report, profile, profile_report, AcceleratorConfig, CostProfile, CycleConstants, Phase, UnitCosts,
};
use crate::kem::{Hqc, KemError};
use crate::sampling::{Seed, SEED_BYTES};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Format(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("ciphertext rejected")]
    Rejected,
    #[error("{0} known-answer record(s) failed")]
    KatFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::KatFailed(_) => 1,
            CliError::Usage(_) | CliError::Format(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Rejected => 4,
        }
    }
}

impl From<KemError> for CliError {
    fn from(e: KemError) -> Self {
        match e {
            KemError::Rejected => CliError::Rejected,
            other => CliError::Format(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hqc", version, about = "HQC-128 key encapsulation, known-answer files and cost reports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a key pair.
    Keygen {
        /// 40-byte seed as hex; platform entropy when omitted.
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        out_pk: PathBuf,
        #[arg(long)]
        out_sk: PathBuf,
        /// Write lowercase hex instead of raw bytes.
        #[arg(long)]
        hex: bool,
    },
    /// Encapsulate to a public key.
    Encaps {
        #[arg(long)]
        pk: PathBuf,
        /// 40-byte coins as hex; platform entropy when omitted.
        #[arg(long)]
        coins: Option<String>,
        #[arg(long)]
        out_ct: PathBuf,
        #[arg(long)]
        out_ss: PathBuf,
        #[arg(long)]
        hex: bool,
    },
    /// Decapsulate a ciphertext. Exits with 4 on rejection.
    Decaps {
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(long)]
        out_ss: PathBuf,
        #[arg(long)]
        hex: bool,
    },
    /// Write a known-answer file.
    Kat {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long)]
        seed: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-run every record of a known-answer file.
    KatVerify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Wall-clock timing of the three phases.
    Bench {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        iters: u64,
    },
    /// Instrumented run with the category table.
    Profile {
        #[arg(long)]
        phase: Option<Phase>,
        #[arg(long)]
        seed: Option<String>,
    },
    /// Cycle estimates for a set of accelerators.
    Costmodel {
        #[command(flatten)]
        flags: AccelFlags,
        #[arg(long)]
        seed: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct AccelFlags {
    #[arg(long)]
    pub dma: bool,
    #[arg(long)]
    pub r_unit: bool,
    #[arg(long)]
    pub sampling_unit: bool,
    #[arg(long)]
    pub rm_decoder: bool,
    #[arg(long)]
    pub gf_insn: bool,
    /// Enable every accelerator.
    #[arg(long)]
    pub all: bool,
}

impl AccelFlags {
    pub fn config(&self) -> AcceleratorConfig {
        if self.all {
            return AcceleratorConfig::ALL;
        }
        AcceleratorConfig {
            dma: self.dma,
            r_unit: self.r_unit,
            sampling_unit: self.sampling_unit,
            rm_decoder: self.rm_decoder,
            gf_insn: self.gf_insn,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Reports go to `out`, diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn parse_seed(what: &str, hex_str: &str) -> Result<Seed, CliError> {
    let bytes = hex::decode(hex_str.trim()).map_err(|e| CliError::Usage(format!("--{what}: {e}")))?;
    Seed::from_slice(&bytes)
        .map_err(|_| CliError::Usage(format!("--{what}: expected {SEED_BYTES} bytes, got {}", bytes.len())))
}

fn seed_or_entropy(what: &str, arg: Option<&str>) -> Result<Seed, CliError> {
    match arg {
        Some(s) => parse_seed(what, s),
        None => {
            let mut s = [0u8; SEED_BYTES];
            OsRng
                .try_fill_bytes(&mut s)
                .map_err(|e| CliError::Io { path: PathBuf::from("<entropy>"), source: std::io::Error::other(e) })?;
            Ok(Seed(s))
        }
    }
}

fn read_file(path: &Path, hex_mode: bool) -> Result<Vec<u8>, CliError> {
    let raw = fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    if !hex_mode {
        return Ok(raw);
    }
    let text = String::from_utf8(raw).map_err(|_| CliError::Format(format!("{}: not hex text", path.display())))?;
    hex::decode(text.trim()).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8], hex_mode: bool) -> Result<(), CliError> {
    let data = if hex_mode { hex::encode(bytes).into_bytes() } else { bytes.to_vec() };
    fs::write(path, data).map_err(|source| CliError::Io { path: path.into(), source })
}

fn report(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
}

fn all_profiles(seed: &Seed) -> Vec<CostProfile> {
    Phase::ALL.iter().map(|&p| profile(p, seed)).collect()
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let kem = Hqc::hqc128();
    match cmd {
        Command::Keygen { seed, out_pk, out_sk, hex } => {
            let seed = seed_or_entropy("seed", seed.as_deref())?;
            let (pk, sk) = kem.keypair_bytes(&seed)?;
            write_file(&out_pk, &pk, hex)?;
            write_file(&out_sk, &sk, hex)?;
            report(out, &format!("pk_bytes={}\nsk_bytes={}\n", pk.len(), sk.len()))
        }
        Command::Encaps { pk, coins, out_ct, out_ss, hex } => {
            let pk = read_file(&pk, hex)?;
            let coins = seed_or_entropy("coins", coins.as_deref())?;
            let (ct, ss) = kem.encaps_bytes(&pk, &coins)?;
            write_file(&out_ct, &ct, hex)?;
            write_file(&out_ss, ss.as_bytes(), hex)?;
            report(out, &format!("ct_bytes={}\nss_bytes={}\n", ct.len(), ss.as_bytes().len()))
        }
        Command::Decaps { sk, ct, out_ss, hex } => {
            let sk = read_file(&sk, hex)?;
            let ct = read_file(&ct, hex)?;
            let ss = kem.decaps_bytes(&sk, &ct)?;
            write_file(&out_ss, ss.as_bytes(), hex)?;
            report(out, &format!("ss_bytes={}\n", ss.as_bytes().len()))
        }
        Command::Kat { count, seed, out: path } => {
            let master = parse_seed("seed", &seed)?;
            let records = kat::generate(&kem, &master, count as usize);
            fs::write(&path, kat::format(&records)).map_err(|source| CliError::Io { path: path.clone(), source })?;
            report(out, &format!("records={}\n", records.len()))
        }
        Command::KatVerify { input } => {
            let text = fs::read_to_string(&input).map_err(|source| CliError::Io { path: input.clone(), source })?;
            let records = kat::parse(&text).map_err(|e| CliError::Format(format!("{}: {e}", input.display())))?;
            let mut failed = 0;
            let mut lines = String::new();
            for r in &records {
                let ok = kat::verify(&kem, r);
                failed += usize::from(!ok);
                lines.push_str(&format!("count={} {}\n", r.count, if ok { "PASS" } else { "FAIL" }));
            }
            lines.push_str(&format!("records={} failed={failed}\n", records.len()));
            report(out, &lines)?;
            if failed > 0 {
                return Err(CliError::KatFailed(failed));
            }
            Ok(())
        }
        Command::Bench { iters } => report(out, &bench(&kem, iters as usize)?),
        Command::Profile { phase, seed } => {
            let seed = match seed {
                Some(s) => parse_seed("seed", &s)?,
                None => Seed([0; SEED_BYTES]),
            };
            let profiles = match phase {
                Some(p) => vec![profile(p, &seed)],
                None => all_profiles(&seed),
            };
            report(out, &profile_report(&profiles, &UnitCosts::REFERENCE))
        }
        Command::Costmodel { flags, seed } => {
            let seed = match seed {
                Some(s) => parse_seed("seed", &s)?,
                None => Seed([0; SEED_BYTES]),
            };
            let text = costmodel_report(&flags.config(), &all_profiles(&seed), &CycleConstants::default());
            report(out, &text)
        }
    }
}

fn bench(kem: &Hqc, iters: usize) -> Result<String, CliError> {
    let mut times: [Vec<Duration>; 3] = Default::default();
    for i in 0..iters {
        let mut s = [0u8; SEED_BYTES];
        s[..8].copy_from_slice(&(i as u64).to_le_bytes());
        let seed = Seed(s);

        let t = Instant::now();
        let (pk, sk) = kem.keygen(&seed)?;
        times[0].push(t.elapsed());
        let t = Instant::now();
        let (ct, ss) = kem.encaps(&pk, &seed)?;
        times[1].push(t.elapsed());
        let t = Instant::now();
        let ss2 = kem.decaps(&sk, &ct)?;
        times[2].push(t.elapsed());
        if ss != ss2 {
            return Err(CliError::Rejected);
        }
    }
    let mut text = format!("{:<8}{:>12}{:>12}\n", "phase", "mean ms", "median ms");
    let mut kv = String::new();
    for (phase, ts) in Phase::ALL.iter().zip(times.iter_mut()) {
        ts.sort();
        let mean = ts.iter().map(Duration::as_secs_f64).sum::<f64>() / ts.len() as f64;
        let median = ts[ts.len() / 2].as_secs_f64();
        text.push_str(&format!("{:<8}{:>12.3}{:>12.3}\n", phase.name(), mean * 1e3, median * 1e3));
        kv.push_str(&format!("bench.{phase}.mean_ns={:.0}\nbench.{phase}.median_ns={:.0}\n", mean * 1e9, median * 1e9));
    }
    text.push('\n');
    text.push_str(&format!("bench.iters={iters}\n"));
    text.push_str(&kv);
    Ok(text)
}

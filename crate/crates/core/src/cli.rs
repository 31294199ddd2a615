//! Command-line front end and the on-disk code set format.
//!
//! A code set file is a JSON document:
//!
//! ```text
//! {
//!   "format_version": 1,
//!   "delta": 6,
//!   "params": { "K": 12, "M": 4, "N": 24, "Z": 8, "q": 2, "p": 3,
//!               "m": 3, "k": 1, "s": 2, "delta": 6 },
//!   "codes": [
//!     { "label": { "family": "U", "t": 0, "lambda": 0 },
//!       "sequences": [[0, 0, 0, ...], ...] },
//!     ...
//!   ]
//! }
//! ```
//!
//! Entry `i` of a sequence is `ω_δ^{e_i}` for the stored exponent `e_i`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::boolfn::{parse_gbf, RootSequence};
use crate::construct::{build_ccc, build_zccs, minimal_s, Code, CodeLabel, CodeSet, CodeSetParams};
use crate::correlate::profile;
use crate::verify::verify_set;
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CodeSetFile {
    pub format_version: u32,
    pub delta: usize,
    pub params: CodeSetParams,
    pub codes: Vec<CodeEntry>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CodeEntry {
    pub label: CodeLabel,
    pub sequences: Vec<Vec<u32>>,
}

impl From<&CodeSet> for CodeSetFile {
    fn from(set: &CodeSet) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            delta: set.delta(),
            params: *set.params(),
            codes: set
                .codes()
                .iter()
                .map(|c| CodeEntry {
                    label: c.label(),
                    sequences: c
                        .sequences()
                        .iter()
                        .map(|s| s.exponents().to_vec())
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<CodeSetFile> for CodeSet {
    type Error = Error;

    fn try_from(file: CodeSetFile) -> Result<Self> {
        let bad = |e: Error| Error::FileFormat(e.to_string());
        if file.format_version != FORMAT_VERSION {
            return Err(Error::FileFormat(format!(
                "unsupported format_version {}",
                file.format_version
            )));
        }
        if file.delta != file.params.delta {
            return Err(Error::FileFormat(format!(
                "delta {} disagrees with params.delta {}",
                file.delta, file.params.delta
            )));
        }
        let codes = file
            .codes
            .into_iter()
            .map(|entry| {
                let seqs = entry
                    .sequences
                    .into_iter()
                    .map(|e| RootSequence::new(file.delta, e))
                    .collect::<Result<Vec<_>>>()?;
                Code::new(seqs, entry.label)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(bad)?;
        CodeSet::new(codes, file.params).map_err(bad)
    }
}

pub fn write_code_set(path: &Path, set: &CodeSet) -> Result<()> {
    let text = serde_json::to_string_pretty(&CodeSetFile::from(set))
        .map_err(|e| Error::FileFormat(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| Error::FileFormat(format!("{}: {e}", path.display())))
}

pub fn read_code_set(path: &Path) -> Result<CodeSet> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::FileFormat(format!("{}: {e}", path.display())))?;
    let file: CodeSetFile =
        serde_json::from_str(&text).map_err(|e| Error::FileFormat(e.to_string()))?;
    file.try_into()
}

#[derive(Parser, Debug)]
#[command(
    name = "zccs",
    version,
    about = "Build and verify Z-complementary code sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a CCC or ZCCS and write it to a file.
    Generate(GenerateArgs),
    /// Check ZCCS, optimality, and CCC conditions of a code set file.
    Verify(VerifyArgs),
    /// Export the correlation profile of a code pair as CSV.
    Corr(CorrArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Kind {
    Ccc,
    Zccs,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub m: usize,
    /// Quadratic function, e.g. "x1*x2 + 2*x0".
    #[arg(long = "f")]
    pub function: String,
    /// Comma-separated variables to delete, e.g. "x0,x3".
    #[arg(long)]
    pub delete: Option<String>,
    /// End vertex of the path; defaults to the one with the smaller index.
    #[arg(long)]
    pub gamma: Option<String>,
    #[arg(long, required_if_eq("kind", "zccs"))]
    pub p: Option<u32>,
    /// Defaults to the smallest s with 2^s >= p.
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Width to check; defaults to the file's claimed Z.
    #[arg(long)]
    pub zcz: Option<usize>,
    /// Also compute the exact maximal ZCZ width.
    #[arg(long)]
    pub max_zcz: bool,
}

#[derive(Args, Debug)]
pub struct CorrArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Code indices "mu1,mu2".
    #[arg(long)]
    pub pair: String,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Process exit status for a completed command.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    match cli.command {
        Command::Generate(args) => cmd_generate(&args, out).map(|_| Outcome::Success),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Corr(args) => cmd_corr(&args, out).map(|_| Outcome::Success),
    }
}

/// Accepts `x3` or `3`.
fn parse_var(text: &str) -> Result<usize> {
    let t = text.trim();
    let digits = t.strip_prefix('x').unwrap_or(t);
    digits.parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("bad variable '{t}'"),
    })
}

fn parse_var_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_var)
        .collect()
}

pub fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<CodeSet> {
    let f = parse_gbf(&args.function, args.m, args.q)?;
    let deleted = args
        .delete
        .as_deref()
        .map(parse_var_list)
        .transpose()?
        .unwrap_or_default();
    let gamma = args.gamma.as_deref().map(parse_var).transpose()?;
    let set = match args.kind {
        Kind::Ccc => build_ccc(&f, &deleted, gamma)?,
        Kind::Zccs => {
            let p = args
                .p
                .ok_or_else(|| Error::InvalidParams("--p is required for zccs".into()))?;
            build_zccs(
                &f,
                &deleted,
                gamma,
                p,
                args.s.unwrap_or_else(|| minimal_s(p)),
            )?
        }
    };
    write_code_set(&args.out, &set)?;
    let p = set.params();
    writeln!(
        out,
        "K={} M={} N={} Z={} delta={}",
        p.set_size, p.code_size, p.length, p.zcz_claimed, p.delta
    )
    .map_err(io_err)?;
    Ok(set)
}

fn io_err(e: std::io::Error) -> Error {
    Error::FileFormat(e.to_string())
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome> {
    let set = read_code_set(&args.input)?;
    let z = args.zcz.unwrap_or(set.params().zcz_claimed);
    let report = verify_set(&set, z, args.max_zcz)?;
    let p = set.params();
    let mut text = format!(
        "set: K={} M={} N={} delta={}\nzcz: {}\nis_zccs: {}\noptimal: {}\nis_ccc: {}\npeak: {}\n",
        p.set_size,
        p.code_size,
        p.length,
        p.delta,
        z,
        report.is_zccs_at_claimed_z,
        report.optimal,
        report.is_ccc,
        report.peak
    );
    if args.max_zcz {
        match report.max_zcz {
            Some(v) => text += &format!("max_zcz: {v}\n"),
            None => text += "max_zcz: none\n",
        }
    }
    match report.witness {
        Some(w) => text += &format!("witness: mu1={} mu2={} tau={}\n", w.mu1, w.mu2, w.tau),
        None => text += "witness: none\n",
    }
    text += if report.passed() {
        "result: PASS\n"
    } else {
        "result: FAIL\n"
    };
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(if report.passed() {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    })
}

/// Formats like C's `%.12g`.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let prec = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.prec$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn corr_csv(set: &CodeSet, mu1: usize, mu2: usize) -> Result<String> {
    let a = set.code(mu1)?;
    let b = set.code(mu2)?;
    let prof = profile(a, b)?;
    let mut csv = String::from("tau,re,im,abs,exact_zero\n");
    for (tau, v) in prof.iter() {
        let zero = v.is_zero();
        let z = if zero {
            Default::default()
        } else {
            v.to_complex()
        };
        csv += &format!(
            "{tau},{},{},{},{zero}\n",
            fmt_sig12(z.re),
            fmt_sig12(z.im),
            fmt_sig12(z.norm())
        );
    }
    Ok(csv)
}

pub fn cmd_corr(args: &CorrArgs, out: &mut dyn Write) -> Result<()> {
    let set = read_code_set(&args.input)?;
    let idx = parse_var_list(&args.pair)?;
    let [mu1, mu2] = idx[..] else {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("--pair expects two indices, got '{}'", args.pair),
        });
    };
    let csv = corr_csv(&set, mu1, mu2)?;
    match &args.csv {
        Some(path) => {
            fs::write(path, csv).map_err(|e| Error::FileFormat(format!("{}: {e}", path.display())))
        }
        None => out.write_all(csv.as_bytes()).map_err(io_err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formatting() {
        assert_eq!(fmt_sig12(96.0), "96");
        assert_eq!(fmt_sig12(-0.0), "0");
        assert_eq!(fmt_sig12(0.5), "0.5");
        assert_eq!(fmt_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig12(-2.0 / 3.0 * 100.0), "-66.6666666667");
        assert_eq!(fmt_sig12(1.5e-20), "1.5e-20");
        assert_eq!(fmt_sig12(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt_sig12(0.999999999999999), "1");
    }

    #[test]
    fn var_lists() {
        assert_eq!(parse_var_list("x0, x3").unwrap(), vec![0, 3]);
        assert_eq!(parse_var_list("1,2").unwrap(), vec![1, 2]);
        assert!(parse_var_list("").unwrap().is_empty());
        assert!(parse_var_list("y1").is_err());
    }

    #[test]
    fn missing_p_is_a_usage_error() {
        let err = Cli::try_parse_from([
            "zccs", "generate", "--kind", "zccs", "--q", "2", "--m", "3", "--f", "x1*x2", "--out",
            "x.json",
        ])
        .unwrap_err();
        assert_eq!(err.kind(), clap::error::ErrorKind::MissingRequiredArgument);
        assert!(Cli::try_parse_from([
            "zccs", "generate", "--kind", "ccc", "--q", "2", "--m", "2", "--f", "x0*x1", "--out",
            "x.json",
        ])
        .is_ok());
    }

    #[test]
    fn file_validation() {
        let f = parse_gbf("x0*x1", 2, 2).unwrap();
        let set = build_ccc(&f, &[], None).unwrap();
        let file = CodeSetFile::from(&set);
        assert_eq!(CodeSet::try_from(file.clone()).unwrap(), set);

        let mut bad = file.clone();
        bad.codes[0].sequences[0][0] = 2;
        assert!(matches!(CodeSet::try_from(bad), Err(Error::FileFormat(_))));

        let mut bad = file.clone();
        bad.format_version = 7;
        assert!(matches!(CodeSet::try_from(bad), Err(Error::FileFormat(_))));

        let mut bad = file;
        bad.codes[1].sequences.pop();
        assert!(matches!(CodeSet::try_from(bad), Err(Error::FileFormat(_))));
    }
}

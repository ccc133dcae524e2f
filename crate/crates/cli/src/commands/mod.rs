pub mod colpres;
pub mod crystal;
pub mod plactic;

use placto_core::crystal::{parse_word_text, CrystalType, Family, Letter, Word};
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

pub type CliError = Box<dyn std::error::Error>;
pub type CmdResult = Result<i32, CliError>;

/// Step cap for normalization; `PLACTO_STEP_CAP` overrides the default.
pub fn step_cap() -> usize {
    std::env::var("PLACTO_STEP_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(10_000)
}

pub fn err(msg: impl Display) -> CliError {
    msg.to_string().into()
}

/// Resolve the crystal type, inferring the rank from the word letters when
/// `--rank` is absent: for family A the largest letter minus one, otherwise
/// the largest absolute letter value.
pub fn resolve_type(
    family: Family,
    rank: Option<u8>,
    words: &[&str],
) -> Result<CrystalType, CliError> {
    let rank = match rank {
        Some(r) => r,
        None => {
            let mut max = 1i8;
            for s in words {
                let w: Word =
                    parse_word_text(s).ok_or_else(|| err(format!("cannot parse word `{s}`")))?;
                for Letter(v) in w {
                    max = max.max(v.abs());
                }
            }
            match family {
                Family::A => (max - 1).max(1) as u8,
                Family::G2 => 2,
                _ => max as u8,
            }
        }
    };
    Ok(CrystalType::new(family, rank)?)
}

pub fn write_output(path: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| err(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

pub fn read_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| err(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// Run a closure inside a rayon pool of the requested width; output must not
/// depend on the width.
pub fn with_jobs<T>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError>
where
    T: Send,
{
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(err)?;
            Ok(pool.install(f))
        }
    }
}

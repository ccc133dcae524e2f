use super::{err, read_json, write_output, CmdResult};
use clap::{Subcommand, ValueEnum};
use placto_core::crystal::Family;
use placto_core::plactic::{
    p_tableau, plactic_equiv, product, read_columns, tableau_from_json, tableau_to_json,
};
use std::path::PathBuf;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TabFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
pub enum PlacticCmd {
    /// Decide plactic equivalence of two words (exit 0 true, 1 false).
    Equiv {
        #[arg(long, default_value = "A")]
        family: Family,
        #[arg(long)]
        rank: Option<u8>,
        word1: String,
        word2: String,
    },
    /// Insert a word into the empty tableau.
    Insert {
        #[arg(long)]
        word: String,
        #[arg(long)]
        rank: Option<u8>,
        #[arg(long, value_enum, default_value_t = TabFormat::Text)]
        format: TabFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Multiply two tableaux given as JSON files.
    Product {
        tableau1: PathBuf,
        tableau2: PathBuf,
        #[arg(long)]
        rank: Option<u8>,
        #[arg(long, value_enum, default_value_t = TabFormat::Text)]
        format: TabFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

pub fn run(cmd: PlacticCmd) -> CmdResult {
    match cmd {
        PlacticCmd::Equiv {
            family,
            rank,
            word1,
            word2,
        } => {
            let ty = super::resolve_type(family, rank, &[&word1, &word2])?;
            let w1 = ty.parse_word(&word1)?;
            let w2 = ty.parse_word(&word2)?;
            let equivalent = plactic_equiv(&ty, &w1, &w2)?;
            println!("{equivalent}");
            Ok(if equivalent { 0 } else { 1 })
        }
        PlacticCmd::Insert {
            word,
            rank,
            format,
            output,
        } => {
            let ty = super::resolve_type(Family::A, rank, &[&word])?;
            let w = ty.parse_word(&word)?;
            let t = p_tableau(&ty, &w)?;
            render(&t, format, output.as_ref())?;
            Ok(0)
        }
        PlacticCmd::Product {
            tableau1,
            tableau2,
            rank,
            format,
            output,
        } => {
            let t1 = tableau_from_json(&read_json(&tableau1)?)?;
            let t2 = tableau_from_json(&read_json(&tableau2)?)?;
            let all: Vec<String> = [&t1, &t2]
                .iter()
                .map(|t| placto_core::crystal::word_to_string(&read_columns(t)))
                .collect();
            let refs: Vec<&str> = all.iter().map(String::as_str).collect();
            let ty = super::resolve_type(Family::A, rank, &refs)?;
            for t in [&t1, &t2] {
                for c in &t.columns {
                    ty.check_word(c).map_err(|e| err(format!("{e}")))?;
                }
            }
            let t = product(&ty, &t1, &t2)?;
            render(&t, format, output.as_ref())?;
            Ok(0)
        }
    }
}

fn render(
    t: &placto_core::Tableau,
    format: TabFormat,
    output: Option<&PathBuf>,
) -> Result<(), super::CliError> {
    let rendered = match format {
        TabFormat::Text => t.render(),
        TabFormat::Json => {
            let mut v = tableau_to_json(t);
            v.as_object_mut().expect("object").insert(
                "schema_version".into(),
                serde_json::json!(placto_core::SCHEMA_VERSION),
            );
            serde_json::to_string_pretty(&v)? + "\n"
        }
    };
    write_output(output, &rendered)
}

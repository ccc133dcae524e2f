use super::{write_output, CmdResult};
use clap::{Subcommand, ValueEnum};
use placto_core::crystal::{
    check_axioms, connected_component, to_highest_weight, words_up_to, Family,
};
use std::path::PathBuf;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
pub enum CrystalCmd {
    /// Check the crystal axioms on all words up to a length.
    Check {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        rank: u8,
        #[arg(long, default_value_t = 3)]
        maxlen: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Breadth-first closure of a word under the operators.
    Component {
        #[arg(long, default_value = "A")]
        family: Family,
        #[arg(long)]
        rank: Option<u8>,
        #[arg(long)]
        word: String,
        /// Vertex cap for the closure.
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Raise a word to its highest-weight representative.
    Hw {
        #[arg(long, default_value = "A")]
        family: Family,
        #[arg(long)]
        rank: Option<u8>,
        #[arg(long)]
        word: String,
    },
}

pub fn run(cmd: CrystalCmd) -> CmdResult {
    match cmd {
        CrystalCmd::Check {
            family,
            rank,
            maxlen,
            output,
        } => {
            let ty = placto_core::CrystalType::new(family, rank)?;
            let words = words_up_to(&ty, maxlen);
            let violations = check_axioms(&ty, &words)?;
            let mut report = format!(
                "checked {} words over {}_{} up to length {}: {} violations\n",
                words.len(),
                family,
                rank,
                maxlen,
                violations.len()
            );
            for v in &violations {
                report.push_str(&format!("{v}\n"));
            }
            write_output(output.as_ref(), &report)?;
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        CrystalCmd::Component {
            family,
            rank,
            word,
            cap,
            format,
            output,
        } => {
            let ty = super::resolve_type(family, rank, &[&word])?;
            let w = ty.parse_word(&word)?;
            let graph = connected_component(&ty, &w, cap)?;
            let rendered = match format {
                GraphFormat::Dot => graph.to_dot(),
                GraphFormat::Json => {
                    let mut v = graph.to_json();
                    v.as_object_mut().expect("object").insert(
                        "schema_version".into(),
                        serde_json::json!(placto_core::SCHEMA_VERSION),
                    );
                    serde_json::to_string_pretty(&v)? + "\n"
                }
                GraphFormat::Text => format!(
                    "component of {}: {} vertices, {} edges\n",
                    word,
                    graph.vertices.len(),
                    graph.edges.len()
                ),
            };
            write_output(output.as_ref(), &rendered)?;
            Ok(0)
        }
        CrystalCmd::Hw { family, rank, word } => {
            let ty = super::resolve_type(family, rank, &[&word])?;
            let w = ty.parse_word(&word)?;
            let (hw, path) = to_highest_weight(&ty, &w)?;
            let labels: Vec<String> = path.ops.iter().map(u8::to_string).collect();
            println!(
                "{} path=[{}]",
                placto_core::crystal::word_to_string(&hw),
                labels.join(",")
            );
            Ok(0)
        }
    }
}

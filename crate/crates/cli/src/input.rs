use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;

use signlab::cube::BoolFunction;
use signlab::formula::{parse, Formula};

/// Where a Boolean function comes from. Exactly one source is required.
#[derive(Debug, Clone, Args)]
pub struct FunctionArgs {
    /// Formula text, e.g. "x1 & !x2 | x3"
    #[arg(long)]
    pub formula: Option<String>,

    /// File holding a formula
    #[arg(long, value_name = "PATH")]
    pub formula_file: Option<PathBuf>,

    /// File holding a truth table `n:<+->`
    #[arg(long, value_name = "PATH")]
    pub table: Option<PathBuf>,

    /// Number of inputs for a formula; defaults to its largest variable index
    #[arg(long)]
    pub arity: Option<usize>,
}

impl FunctionArgs {
    pub fn load(&self) -> Result<BoolFunction> {
        match (&self.formula, &self.formula_file, &self.table) {
            (Some(text), None, None) => formula_function(&parse(text)?, self.arity),
            (None, Some(path), None) => {
                let text = read(path)?;
                formula_function(&parse(&text).with_context(|| format!("in {}", path.display()))?, self.arity)
            }
            (None, None, Some(path)) => {
                if self.arity.is_some() {
                    bail!("--arity only applies to formulas");
                }
                table_file(path)
            }
            (None, None, None) => bail!("give one of --formula, --formula-file, --table"),
            _ => bail!("--formula, --formula-file and --table are mutually exclusive"),
        }
    }
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn table_file(path: &Path) -> Result<BoolFunction> {
    let text = read(path)?;
    text.parse().with_context(|| format!("in {}", path.display()))
}

pub fn formula_function(f: &Formula, arity: Option<usize>) -> Result<BoolFunction> {
    Ok(f.to_function(arity.unwrap_or(f.max_var()))?)
}

/// A function given inline: a truth table `n:<+->`, a path to a table file,
/// or formula text, tried in that order.
pub fn function_spec(spec: &str) -> Result<BoolFunction> {
    if let Ok(f) = spec.parse::<BoolFunction>() {
        return Ok(f);
    }
    let path = Path::new(spec);
    if path.is_file() {
        return table_file(path);
    }
    let formula = parse(spec).with_context(|| format!("`{spec}` is not a table, a table file, or a formula"))?;
    formula_function(&formula, None)
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

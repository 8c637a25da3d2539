use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use happy_core::gadgets::{
    gen_crbds_to_mhe, gen_crbds_to_mhv, gen_random_crbds, gen_random_rmis, gen_rmis_to_mhe,
    gen_rmis_to_mhv, PathVariant, Reduction, StarVariant,
};
use happy_core::io::{parse_crbds, parse_rmis, serialize_crbds, serialize_happy, serialize_rmis};

use crate::{emit, read, Outcome};

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Regular multicolored independent set to MHV on disjoint P3s.
    RmisMhv { file: PathBuf },
    /// Regular multicolored independent set to MHE.
    RmisMhe {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = PathArg::Path)]
        variant: PathArg,
    },
    /// Colorful red-blue dominating set to MHV on stars.
    CrbdsMhv { file: PathBuf },
    /// Colorful red-blue dominating set to MHE.
    CrbdsMhe {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = StarArg::Star)]
        variant: StarArg,
    },
    /// Random regular multicolored independent set instance.
    RandomRmis {
        /// Number of cliques.
        #[arg(long)]
        k: usize,
        /// Clique size.
        #[arg(long)]
        q: usize,
        /// Cross edges per vertex.
        #[arg(long, default_value_t = 1)]
        x: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random colorful red-blue dominating set instance.
    RandomCrbds {
        /// Number of colors.
        #[arg(long)]
        k: usize,
        /// Red vertices per color.
        #[arg(long, default_value_t = 2)]
        per_color: usize,
        /// Number of blue vertices.
        #[arg(long)]
        nb: usize,
        /// Red-blue edge probability.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PathArg {
    Path,
    Triangle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StarArg {
    Star,
    Cluster,
}

fn reduction_text(red: &Reduction) -> String {
    eprintln!("k' = {}", red.k);
    format!("# k {}\n{}", red.k, serialize_happy(&red.graph))
}

pub fn run(kind: GenKind, output: Option<&Path>) -> Outcome {
    let text = match kind {
        GenKind::RmisMhv { file } => reduction_text(&gen_rmis_to_mhv(&parse_rmis(&read(&file)?)?)?),
        GenKind::RmisMhe { file, variant } => {
            let variant = match variant {
                PathArg::Path => PathVariant::Path,
                PathArg::Triangle => PathVariant::Triangle,
            };
            reduction_text(&gen_rmis_to_mhe(&parse_rmis(&read(&file)?)?, variant)?)
        }
        GenKind::CrbdsMhv { file } => reduction_text(&gen_crbds_to_mhv(&parse_crbds(&read(&file)?)?)?),
        GenKind::CrbdsMhe { file, variant } => {
            let variant = match variant {
                StarArg::Star => StarVariant::Star,
                StarArg::Cluster => StarVariant::Cluster,
            };
            reduction_text(&gen_crbds_to_mhe(&parse_crbds(&read(&file)?)?, variant)?)
        }
        GenKind::RandomRmis { k, q, x, seed } => serialize_rmis(&gen_random_rmis(k, q, x, seed)?),
        GenKind::RandomCrbds { k, per_color, nb, p, seed } => {
            serialize_crbds(&gen_random_crbds(k, per_color, nb, p, seed)?)
        }
    };
    emit(output, &text)?;
    Ok(true)
}

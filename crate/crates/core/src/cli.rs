//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error (bad flags/arguments), 2 data error
//! (unreadable/malformed inputs, failed training preconditions).

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::eval::loocv;
use crate::model_io::{load_model, save_model, Model};
use crate::naive_bayes::{nb_train, nb_tune_theta};
use crate::report::{
    diff_predictions, find_clusters, parse_annotation_file, render_report, Annotation,
    ClusterParams, DiffSide, PredictionTrack,
};
use crate::seq::labels::{apply_labels, labels_to_mask, parse_label_file, write_label_file};
use crate::seq::{
    dataset_stats, filter_short_chains, parse_fasta, write_fasta, Dataset, ProteinChain,
};
use crate::structure::{
    filter_redundancy, filter_resolution, label_interface, load_structure, parse_manifest,
    ContactParams, FilterParams, PartnerKind,
};
use crate::svm::{svm_train, KernelSpec, TrainConfig};
use crate::two_stage::{fit_cpt, search_theta, stage_one_predictions, two_stage_predict};

#[derive(Parser)]
#[command(
    name = "bindsite",
    version,
    about = "Sequence-based prediction of protein-protein and protein-RNA interface residues"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// RNG seed for training and down-sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Window size (defaults: 25 for the NB classifier, 9 for the SVM).
    #[arg(long, global = true)]
    window: Option<usize>,

    /// Decision threshold override for loaded/trained models.
    #[arg(long, global = true)]
    theta: Option<f64>,

    /// Contact distance cutoff in Ångström.
    #[arg(long, global = true, default_value_t = 5.0)]
    cutoff: f64,

    /// Largest run of non-interface residues bridged inside a cluster.
    #[arg(long, global = true, default_value_t = 2)]
    max_gap: usize,

    /// Smallest number of interface residues in a reported cluster.
    #[arg(long, global = true, default_value_t = 3)]
    min_size: usize,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Partner {
    Rna,
    Protein,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelKind {
    Linear,
    Rbf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Classifier {
    Nb,
    TwoStage,
}

#[derive(Subcommand)]
enum Command {
    /// Build a labeled corpus (FASTA + labels) from complex structures.
    BuildDataset {
        /// Manifest of `file_path<TAB>resolution_Å` lines.
        #[arg(long)]
        manifest: PathBuf,
        /// Partner molecule kind defining the interface.
        #[arg(long, value_enum)]
        partner: Partner,
        #[arg(long)]
        out_fasta: PathBuf,
        #[arg(long)]
        out_labels: PathBuf,
        /// Count hydrogen atoms in the contact rule.
        #[arg(long)]
        include_hydrogens: bool,
        /// Pairwise sequence-identity ceiling for the redundancy filter.
        #[arg(long, default_value_t = 0.30)]
        max_identity: f64,
        /// Resolution ceiling in Å; structures worse than this are dropped.
        #[arg(long, default_value_t = 3.5)]
        max_resolution: f64,
        /// Minimum chain length kept.
        #[arg(long, default_value_t = 10)]
        min_len: usize,
        /// Structure files to process (defaults to every manifest entry).
        files: Vec<PathBuf>,
    },

    /// Train the Naïve Bayes RNA-interface classifier.
    TrainNb {
        #[arg(long)]
        fasta: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Additive smoothing pseudo-count.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },

    /// Train the stage-1 SVM protein-interface classifier.
    TrainSvm {
        #[arg(long)]
        fasta: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Box constraint C.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, value_enum, default_value_t = KernelKind::Linear)]
        kernel: KernelKind,
        /// RBF gamma (default 1/feature_count).
        #[arg(long)]
        gamma: Option<f64>,
        /// KKT tolerance.
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
        /// Update-free full scans required to stop.
        #[arg(long, default_value_t = 10)]
        max_passes: usize,
        /// Subsample negatives to at most this ratio of the positives.
        #[arg(long)]
        downsample: Option<f64>,
    },

    /// Fit the stage-2 conditional probability table from SVM predictions.
    FitCpt {
        #[arg(long)]
        svm_model: PathBuf,
        #[arg(long)]
        fasta: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Neighborhood radius.
        #[arg(long, default_value_t = 4)]
        radius: usize,
        /// Additive smoothing pseudo-count per (X, Y) bucket.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },

    /// Tune a model's decision threshold on a labeled training set.
    TuneTheta {
        /// Naïve Bayes or CPT model file.
        #[arg(long)]
        model: PathBuf,
        /// Stage-1 SVM model (required when tuning a CPT model).
        #[arg(long)]
        svm_model: Option<PathBuf>,
        #[arg(long)]
        fasta: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },

    /// Predict interface residues and render per-residue tracks.
    Predict {
        #[arg(long)]
        fasta: PathBuf,
        /// Naïve Bayes model: produces the RNA ('r') track.
        #[arg(long)]
        nb_model: Option<PathBuf>,
        /// Stage-1 SVM model (with --cpt-model): produces the protein track.
        #[arg(long)]
        svm_model: Option<PathBuf>,
        /// Stage-2 CPT model (with --svm-model).
        #[arg(long)]
        cpt_model: Option<PathBuf>,
        /// Functional-domain annotations (`name<TAB>start<TAB>end`).
        #[arg(long)]
        annotations: Option<PathBuf>,
        /// Report block width in columns.
        #[arg(long, default_value_t = 60)]
        width: usize,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the protein track as a mask file.
        #[arg(long)]
        out_protein_mask: Option<PathBuf>,
        /// Also write the RNA track as a mask file.
        #[arg(long)]
        out_rna_mask: Option<PathBuf>,
    },

    /// Leave-one-out cross-validation over a labeled corpus.
    Evaluate {
        #[arg(long)]
        fasta: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, value_enum)]
        classifier: Classifier,
        /// Additive smoothing pseudo-count (NB tables / CPT buckets).
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// SVM box constraint C.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, value_enum, default_value_t = KernelKind::Linear)]
        kernel: KernelKind,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
        #[arg(long, default_value_t = 10)]
        max_passes: usize,
        #[arg(long)]
        downsample: Option<f64>,
        /// Stage-2 neighborhood radius.
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Positionwise and cluster-level differences between two predictions.
    Diff {
        /// Chains for side A (e.g. wildtype).
        #[arg(long)]
        fasta_a: PathBuf,
        /// Chains for side B (e.g. mutant), paired with side A by order.
        #[arg(long)]
        fasta_b: PathBuf,
        #[arg(long)]
        a_protein: Option<PathBuf>,
        #[arg(long)]
        b_protein: Option<PathBuf>,
        #[arg(long)]
        a_rna: Option<PathBuf>,
        #[arg(long)]
        b_rna: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Extract binding-site clusters from a mask file.
    Clusters {
        #[arg(long)]
        mask_file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum RunError {
    Usage(String),
    Data(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Data(e.to_string())
    }
}

type RunResult<T> = std::result::Result<T, RunError>;

/// Entry point used by the binary and by tests. Returns the process exit
/// status.
pub fn cli_main<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    1
                }
            };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(RunError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            1
        }
        Err(RunError::Data(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn read_text(path: &Path) -> RunResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| RunError::Data(format!("cannot read '{}': {e}", path.display())))
}

fn write_output(path: Option<&Path>, content: &str) -> RunResult<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| RunError::Data(format!("cannot write '{}': {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_dataset(fasta: &Path, labels: &Path) -> RunResult<Dataset> {
    let chains = parse_fasta(&read_text(fasta)?)?;
    let entries = parse_label_file(&read_text(labels)?)?;
    let labeled = apply_labels(chains, &entries)?;
    let name = fasta
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".into());
    Ok(Dataset::new(name, labeled)?)
}

fn kernel_spec(kind: KernelKind, gamma: Option<f64>, feature_dim: usize) -> KernelSpec {
    match kind {
        KernelKind::Linear => KernelSpec::Linear,
        KernelKind::Rbf => match gamma {
            Some(g) => KernelSpec::Rbf { gamma: g },
            None => KernelSpec::rbf_default(feature_dim),
        },
    }
}

fn mask_map(path: &Path) -> RunResult<HashMap<String, Vec<bool>>> {
    Ok(parse_label_file(&read_text(path)?)?
        .into_iter()
        .map(|(id, labels)| (id, labels_to_mask(&labels)))
        .collect())
}

fn run(cli: Cli) -> RunResult<()> {
    let cluster_params = ClusterParams {
        max_gap: cli.max_gap,
        min_size: cli.min_size,
    };
    match cli.command {
        Command::BuildDataset {
            manifest,
            partner,
            out_fasta,
            out_labels,
            include_hydrogens,
            max_identity,
            max_resolution,
            min_len,
            files,
        } => {
            let entries = parse_manifest(&read_text(&manifest)?)?;
            let resolutions: HashMap<PathBuf, f64> = entries.iter().cloned().collect();
            let paths: Vec<PathBuf> = if files.is_empty() {
                entries.iter().map(|(p, _)| p.clone()).collect()
            } else {
                files
            };
            if paths.is_empty() {
                return Err(RunError::Data(format!(
                    "manifest '{}' lists no structures",
                    manifest.display()
                )));
            }
            let mut models = Vec::new();
            for path in &paths {
                let mut model = load_structure(path)?;
                model.resolution = resolutions.get(path).copied();
                models.push(model);
            }
            let outcome = filter_resolution(models, max_resolution);
            for warning in &outcome.dropped {
                eprintln!("warning: dropped {warning}");
            }

            let contact = ContactParams {
                cutoff: cli.cutoff,
                include_hydrogens,
            };
            let partner_kind = match partner {
                Partner::Rna => PartnerKind::Rna,
                Partner::Protein => PartnerKind::Protein,
            };
            let mut chains: Vec<ProteinChain> = Vec::new();
            for model in &outcome.kept {
                for (chain_id, chain) in &model.protein_chains {
                    match label_interface(model, *chain_id, partner_kind, &contact) {
                        Ok(labels) => {
                            let mut labeled =
                                chain.sequence.renamed(format!("{}_{chain_id}", model.name));
                            labeled.attach_labels(labels)?;
                            chains.push(labeled);
                        }
                        Err(e) => eprintln!("warning: skipping {}_{chain_id}: {e}", model.name),
                    }
                }
            }

            let chains = filter_short_chains(chains, min_len);
            let filter = FilterParams {
                max_identity,
                max_resolution,
                min_chain_len: min_len,
            };
            let chains = filter_redundancy(chains, &filter);
            if chains.is_empty() {
                return Err(RunError::Data(
                    "no chains survived labeling and filtering".into(),
                ));
            }

            let stats = dataset_stats(&chains)?;
            let label_entries: Vec<(String, Vec<_>)> = chains
                .iter()
                .map(|c| (c.id().to_string(), c.labels().unwrap().to_vec()))
                .collect();
            write_output(Some(&out_fasta), &write_fasta(&chains, 60))?;
            write_output(Some(&out_labels), &write_label_file(&label_entries))?;
            println!(
                "{} chains, {} residues, {} interface ({:.1}%)",
                stats.chains,
                stats.residues,
                stats.positives,
                100.0 * stats.positive_fraction
            );
            Ok(())
        }

        Command::TrainNb {
            fasta,
            labels,
            out,
            alpha,
        } => {
            let d = load_dataset(&fasta, &labels)?;
            let w = cli.window.unwrap_or(25);
            let mut model = nb_train(&d, w, alpha)?;
            if let Some(theta) = cli.theta {
                model.set_theta(theta)?;
            }
            save_model(&out, &Model::NaiveBayes(model))?;
            println!(
                "trained naive-bayes model on '{}' (window {w}) -> {}",
                d.name(),
                out.display()
            );
            Ok(())
        }

        Command::TrainSvm {
            fasta,
            labels,
            out,
            c,
            kernel,
            gamma,
            tolerance,
            max_passes,
            downsample,
        } => {
            let d = load_dataset(&fasta, &labels)?;
            let w = cli.window.unwrap_or(9);
            let cfg = TrainConfig {
                c,
                tolerance,
                max_passes,
                seed: cli.seed,
                negative_downsample: downsample,
            };
            let spec = kernel_spec(kernel, gamma, crate::seq::ALPHABET_SIZE * w);
            let model = svm_train(&d, &cfg, spec, w)?;
            println!(
                "trained svm on '{}' (window {w}, {} support vectors) -> {}",
                d.name(),
                model.support_vectors().len(),
                out.display()
            );
            save_model(&out, &Model::Svm(model))?;
            Ok(())
        }

        Command::FitCpt {
            svm_model,
            fasta,
            labels,
            out,
            radius,
            alpha,
        } => {
            let svm = match load_model(&svm_model)? {
                Model::Svm(m) => m,
                other => {
                    return Err(RunError::Data(format!(
                        "'{}' holds a {} model, expected svm",
                        svm_model.display(),
                        other.kind_name()
                    )))
                }
            };
            let d = load_dataset(&fasta, &labels)?;
            let stage1 = stage_one_predictions(&svm, &d)?;
            let mut cpt = fit_cpt(&d, &stage1, radius, alpha)?;
            if let Some(theta) = cli.theta {
                cpt.set_theta(theta)?;
            }
            save_model(&out, &Model::Cpt(cpt))?;
            println!(
                "fitted stage-2 table (radius {radius}) -> {}",
                out.display()
            );
            Ok(())
        }

        Command::TuneTheta {
            model,
            svm_model,
            fasta,
            labels,
            out,
        } => {
            let d = load_dataset(&fasta, &labels)?;
            match load_model(&model)? {
                Model::NaiveBayes(mut nb) => {
                    let theta = nb_tune_theta(&nb, &d)?;
                    nb.set_theta(theta)?;
                    save_model(&out, &Model::NaiveBayes(nb))?;
                    println!("theta {theta:.6e} -> {}", out.display());
                }
                Model::Cpt(mut cpt) => {
                    let svm_path = svm_model.ok_or_else(|| {
                        RunError::Usage(
                            "tuning a cpt model needs --svm-model for stage-1 predictions".into(),
                        )
                    })?;
                    let svm = match load_model(&svm_path)? {
                        Model::Svm(m) => m,
                        other => {
                            return Err(RunError::Data(format!(
                                "'{}' holds a {} model, expected svm",
                                svm_path.display(),
                                other.kind_name()
                            )))
                        }
                    };
                    let stage1 = stage_one_predictions(&svm, &d)?;
                    let search = search_theta(&cpt, &d, &stage1)?;
                    cpt.set_theta(search.theta)?;
                    let best = search
                        .grid
                        .iter()
                        .find(|p| p.theta == search.theta)
                        .map(|p| p.mcc)
                        .unwrap_or(0.0);
                    save_model(&out, &Model::Cpt(cpt))?;
                    println!(
                        "theta {:.2} (training MCC {best:.4}) -> {}",
                        search.theta,
                        out.display()
                    );
                }
                Model::Svm(_) => {
                    return Err(RunError::Data(
                        "svm models have no tunable threshold; tune the cpt model instead".into(),
                    ))
                }
            }
            Ok(())
        }

        Command::Predict {
            fasta,
            nb_model,
            svm_model,
            cpt_model,
            annotations,
            width,
            out,
            out_protein_mask,
            out_rna_mask,
        } => {
            if nb_model.is_none() && svm_model.is_none() && cpt_model.is_none() {
                return Err(RunError::Usage(
                    "predict needs --nb-model and/or --svm-model with --cpt-model".into(),
                ));
            }
            if svm_model.is_some() != cpt_model.is_some() {
                return Err(RunError::Usage(
                    "the protein track needs both --svm-model and --cpt-model".into(),
                ));
            }
            let mut nb = match &nb_model {
                Some(p) => match load_model(p)? {
                    Model::NaiveBayes(m) => Some(m),
                    other => {
                        return Err(RunError::Data(format!(
                            "'{}' holds a {} model, expected naive_bayes",
                            p.display(),
                            other.kind_name()
                        )))
                    }
                },
                None => None,
            };
            let svm = match &svm_model {
                Some(p) => match load_model(p)? {
                    Model::Svm(m) => Some(m),
                    other => {
                        return Err(RunError::Data(format!(
                            "'{}' holds a {} model, expected svm",
                            p.display(),
                            other.kind_name()
                        )))
                    }
                },
                None => None,
            };
            let mut cpt = match &cpt_model {
                Some(p) => match load_model(p)? {
                    Model::Cpt(m) => Some(m),
                    other => {
                        return Err(RunError::Data(format!(
                            "'{}' holds a {} model, expected cpt",
                            p.display(),
                            other.kind_name()
                        )))
                    }
                },
                None => None,
            };
            if let Some(theta) = cli.theta {
                if let Some(m) = nb.as_mut() {
                    m.set_theta(theta)?;
                }
                if let Some(m) = cpt.as_mut() {
                    m.set_theta(theta)?;
                }
            }
            let anns: Option<Vec<Annotation>> = match &annotations {
                Some(p) => Some(parse_annotation_file(&read_text(p)?)?),
                None => None,
            };

            let chains = parse_fasta(&read_text(&fasta)?)?;
            let mut rendered = String::new();
            let mut tsv = String::from("chain_id\ttrack\tstart\tend\tsize\tgaps\tsubsequence\n");
            let mut protein_masks: Vec<(String, Vec<_>)> = Vec::new();
            let mut rna_masks: Vec<(String, Vec<_>)> = Vec::new();
            for chain in &chains {
                let protein_mask = match (&svm, &cpt) {
                    (Some(svm), Some(cpt)) => Some(
                        two_stage_predict(svm, cpt, chain)?
                            .iter()
                            .map(|l| l.is_interface())
                            .collect::<Vec<bool>>(),
                    ),
                    _ => None,
                };
                let rna_mask = match &nb {
                    Some(nb) => Some(
                        nb.classify_chain(chain)?
                            .iter()
                            .map(|l| l.is_interface())
                            .collect::<Vec<bool>>(),
                    ),
                    None => None,
                };
                let track =
                    PredictionTrack::new(chain.clone(), protein_mask.clone(), rna_mask.clone())?;
                rendered.push_str(&render_report(
                    &track,
                    anns.as_deref(),
                    width,
                    &cluster_params,
                ));
                rendered.push('\n');
                let seq = chain.sequence_string();
                for (name, mask) in [("protein", &protein_mask), ("rna", &rna_mask)] {
                    if let Some(mask) = mask {
                        for span in find_clusters(mask, &cluster_params) {
                            tsv.push_str(&format!(
                                "{}\t{name}\t{}\t{}\t{}\t{}\t{}\n",
                                chain.id(),
                                span.start,
                                span.end,
                                span.size,
                                span.gaps,
                                &seq[span.start - 1..span.end]
                            ));
                        }
                    }
                }
                if let Some(mask) = protein_mask {
                    protein_masks.push((
                        chain.id().to_string(),
                        crate::seq::labels::mask_to_labels(&mask),
                    ));
                }
                if let Some(mask) = rna_mask {
                    rna_masks.push((
                        chain.id().to_string(),
                        crate::seq::labels::mask_to_labels(&mask),
                    ));
                }
            }
            if let Some(path) = &out_protein_mask {
                write_output(Some(path), &write_label_file(&protein_masks))?;
            }
            if let Some(path) = &out_rna_mask {
                write_output(Some(path), &write_label_file(&rna_masks))?;
            }
            match cli.format {
                Format::Text => write_output(out.as_deref(), &rendered),
                Format::Tsv => write_output(out.as_deref(), &tsv),
            }
        }

        Command::Evaluate {
            fasta,
            labels,
            classifier,
            alpha,
            c,
            kernel,
            gamma,
            tolerance,
            max_passes,
            downsample,
            radius,
            out,
        } => {
            let d = load_dataset(&fasta, &labels)?;
            let report = match classifier {
                Classifier::Nb => {
                    let w = cli.window.unwrap_or(25);
                    loocv(&d, |fold| {
                        let mut model = nb_train(fold, w, alpha)?;
                        let theta = nb_tune_theta(&model, fold)?;
                        model.set_theta(theta)?;
                        Ok(move |chain: &ProteinChain| model.classify_chain(chain))
                    })?
                }
                Classifier::TwoStage => {
                    let w = cli.window.unwrap_or(9);
                    let cfg = TrainConfig {
                        c,
                        tolerance,
                        max_passes,
                        seed: cli.seed,
                        negative_downsample: downsample,
                    };
                    let spec = kernel_spec(kernel, gamma, crate::seq::ALPHABET_SIZE * w);
                    loocv(&d, |fold| {
                        let svm = svm_train(fold, &cfg, spec, w)?;
                        let stage1 = stage_one_predictions(&svm, fold)?;
                        let mut cpt = fit_cpt(fold, &stage1, radius, alpha)?;
                        let search = search_theta(&cpt, fold, &stage1)?;
                        cpt.set_theta(search.theta)?;
                        Ok(move |chain: &ProteinChain| two_stage_predict(&svm, &cpt, chain))
                    })?
                }
            };
            write_output(out.as_deref(), &report.to_tsv())
        }

        Command::Diff {
            fasta_a,
            fasta_b,
            a_protein,
            b_protein,
            a_rna,
            b_rna,
            out,
        } => {
            if a_protein.is_none() && a_rna.is_none() && b_protein.is_none() && b_rna.is_none() {
                return Err(RunError::Usage(
                    "diff needs at least one mask pair (--a-protein/--b-protein or --a-rna/--b-rna)"
                        .into(),
                ));
            }
            let chains_a = parse_fasta(&read_text(&fasta_a)?)?;
            let chains_b = parse_fasta(&read_text(&fasta_b)?)?;
            if chains_a.len() != chains_b.len() {
                return Err(RunError::Data(format!(
                    "'{}' has {} chains but '{}' has {}; diff pairs records by order",
                    fasta_a.display(),
                    chains_a.len(),
                    fasta_b.display(),
                    chains_b.len()
                )));
            }
            let masks = |path: &Option<PathBuf>| -> RunResult<Option<HashMap<String, Vec<bool>>>> {
                Ok(match path {
                    Some(p) => Some(mask_map(p)?),
                    None => None,
                })
            };
            let (ap, ar, bp, br) = (
                masks(&a_protein)?,
                masks(&a_rna)?,
                masks(&b_protein)?,
                masks(&b_rna)?,
            );
            let lookup = |table: &Option<HashMap<String, Vec<bool>>>,
                          chain: &ProteinChain|
             -> RunResult<Option<Vec<bool>>> {
                match table {
                    None => Ok(None),
                    Some(t) => Ok(Some(t.get(chain.id()).cloned().ok_or_else(|| {
                        RunError::Data(format!("no mask entry for chain '{}'", chain.id()))
                    })?)),
                }
            };

            let mut text = String::new();
            let mut tsv =
                String::from("kind\tchain_a\tchain_b\ttrack\tposition\tend\tfrom\tto\tside\n");
            for (ca, cb) in chains_a.iter().zip(&chains_b) {
                let ta = PredictionTrack::new(ca.clone(), lookup(&ap, ca)?, lookup(&ar, ca)?)?;
                let tb = PredictionTrack::new(cb.clone(), lookup(&bp, cb)?, lookup(&br, cb)?)?;
                let report = diff_predictions(&ta, &tb, &cluster_params)?;
                text.push_str(&format!("# {} vs {}\n", ca.id(), cb.id()));
                if report.is_empty() {
                    text.push_str("identical\n\n");
                    continue;
                }
                if !report.position_changes.is_empty() {
                    text.push_str("position changes:\n");
                }
                for ch in &report.position_changes {
                    text.push_str(&format!(
                        "  {} {} {} -> {}\n",
                        ch.track.as_str(),
                        ch.position,
                        ch.from.to_char(),
                        ch.to.to_char()
                    ));
                    tsv.push_str(&format!(
                        "position\t{}\t{}\t{}\t{}\t\t{}\t{}\t\n",
                        ca.id(),
                        cb.id(),
                        ch.track.as_str(),
                        ch.position,
                        ch.from.to_char(),
                        ch.to.to_char()
                    ));
                }
                if !report.cluster_changes.is_empty() {
                    text.push_str("cluster changes:\n");
                }
                for ch in &report.cluster_changes {
                    let side = match ch.side {
                        DiffSide::OnlyInA => "only_in_a",
                        DiffSide::OnlyInB => "only_in_b",
                    };
                    text.push_str(&format!(
                        "  {} {}-{} (size={}) {}\n",
                        ch.track.as_str(),
                        ch.span.start,
                        ch.span.end,
                        ch.span.size,
                        side
                    ));
                    tsv.push_str(&format!(
                        "cluster\t{}\t{}\t{}\t{}\t{}\t\t\t{}\n",
                        ca.id(),
                        cb.id(),
                        ch.track.as_str(),
                        ch.span.start,
                        ch.span.end,
                        side
                    ));
                }
                text.push('\n');
            }
            match cli.format {
                Format::Text => write_output(out.as_deref(), &text),
                Format::Tsv => write_output(out.as_deref(), &tsv),
            }
        }

        Command::Clusters { mask_file, out } => {
            let entries = parse_label_file(&read_text(&mask_file)?)?;
            let mut text = String::new();
            let mut tsv = String::from("chain_id\tstart\tend\tsize\tgaps\n");
            for (id, labels) in &entries {
                let mask = labels_to_mask(labels);
                let spans = find_clusters(&mask, &cluster_params);
                text.push_str(&format!("# {id}\n"));
                if spans.is_empty() {
                    text.push_str("  (none)\n");
                }
                for span in spans {
                    text.push_str(&format!(
                        "  {}-{}  size={} gaps={}\n",
                        span.start, span.end, span.size, span.gaps
                    ));
                    tsv.push_str(&format!(
                        "{id}\t{}\t{}\t{}\t{}\n",
                        span.start, span.end, span.size, span.gaps
                    ));
                }
            }
            match cli.format {
                Format::Text => write_output(out.as_deref(), &text),
                Format::Tsv => write_output(out.as_deref(), &tsv),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_subcommand_exits_one() {
        assert_eq!(cli_main(["bindsite", "frobnicate"]), 1);
        assert_eq!(cli_main(["bindsite", "predict", "--bogus-flag"]), 1);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(cli_main(["bindsite", "--help"]), 0);
        assert_eq!(cli_main(["bindsite", "clusters", "--help"]), 0);
    }

    #[test]
    fn missing_model_file_exits_two() {
        assert_eq!(
            cli_main([
                "bindsite",
                "predict",
                "--nb-model",
                "/nonexistent/model.json",
                "--fasta",
                "/nonexistent/rev.fa",
            ]),
            2
        );
    }

    #[test]
    fn predict_without_models_is_a_usage_error() {
        assert_eq!(
            cli_main(["bindsite", "predict", "--fasta", "/nonexistent/rev.fa"]),
            1
        );
    }
}

use std::path::Path;

use geomlex_core::corpus::{Cell, InputDigest, Table};
use geomlex_core::discrimination::{
    cdi_all, centroids, map_same_different, nearest_centroids, MAP_VARIANT,
};
use geomlex_core::geometry::{
    consistency_matrix, isoscore, linear_cka, similarity_distributions, SimilarityConfig,
};
use geomlex_core::objectives::{
    phonological_decoding_loss, reconstruction_loss, triplet_loss_batch, FeatureSequence,
    ProbSequence, TripletConfig,
};
use geomlex_core::phonology::{fit_trigram, pic, BOUNDARY};
use geomlex_core::stats::{build_predictor_table, pearson, run_summary, CorrelationResult};
use geomlex_core::synth::{generate, SynthSpec};
use geomlex_core::{
    align_views, AnalysisReport, EmbeddingSet64, Error, Lexicon, PhonemeSequence, Result,
};

use crate::{Command, LossKind};

const LOG_BASE: &str = "e";
const STD_KIND: &str = "population";

pub fn dispatch(command: &Command) -> Result<AnalysisReport> {
    match command {
        Command::Isoscore(a) => {
            let (set, mut report) = with_embeddings("isoscore", &a.embeddings)?;
            report.scalar("isoscore", isoscore(&set)?)?;
            report.scalar("rows", set.len() as f64)?;
            report.scalar("dim", set.dim() as f64)?;
            Ok(report)
        }
        Command::Simdist(a) => {
            let (set, mut report) = with_embeddings("simdist", &a.embeddings)?;
            let config = SimilarityConfig {
                max_pairs_per_group: to_usize(a.max_pairs),
                seed: a.seed,
                bins: to_usize(a.bins),
            };
            report
                .param("seed", a.seed)
                .param("max_pairs", a.max_pairs)
                .param("bins", a.bins)
                .param("similarity", "cosine, raw embeddings");
            let stats = similarity_distributions(&set, &set.category_index(), &config)?;
            report
                .scalar("within_mean", stats.within_mean)?
                .scalar("cross_mean", stats.cross_mean)?
                .scalar("mean_difference", stats.mean_difference)?
                .scalar("within_pairs", stats.within_scores.len() as f64)?
                .scalar("cross_pairs", stats.cross_scores.len() as f64)?;
            let edges = stats.bin_edges();
            let mut table = Table::new(["bin_low", "bin_high", "within", "cross"]);
            for b in 0..config.bins {
                table.push_row(vec![
                    edges[b].into(),
                    edges[b + 1].into(),
                    stats.within_histogram[b].into(),
                    stats.cross_histogram[b].into(),
                ])?;
            }
            report.table("similarity_histogram", table);
            Ok(report)
        }
        Command::Cka(a) => {
            let mut report = AnalysisReport::new("cka");
            let sets = [load(&a.a, &mut report)?, load(&a.b, &mut report)?];
            report.scalar("cka", linear_cka(&align_views(&sets)?)?)?;
            Ok(report)
        }
        Command::Consistency(a) => {
            let mut report = AnalysisReport::new("consistency");
            let sets = a
                .embeddings
                .iter()
                .map(|p| load(p, &mut report))
                .collect::<Result<Vec<_>>>()?;
            let m = consistency_matrix(&sets)?;
            report
                .scalar("mean_cka", m.mean_offdiag)?
                .scalar("comparisons", m.comparisons() as f64)?;
            let mut columns = vec!["view".to_string()];
            columns.extend((0..sets.len()).map(|i| i.to_string()));
            let mut table = Table::new(columns);
            for (i, row) in m.matrix.iter().enumerate() {
                let mut cells = vec![Cell::from(i)];
                cells.extend(row.iter().map(|&v| Cell::from(v)));
                table.push_row(cells)?;
            }
            report.table("consistency_matrix", table);
            Ok(report)
        }
        Command::Cdi(a) => {
            let (set, mut report) = with_embeddings("cdi", &a.embeddings)?;
            report.param("seed", a.seed).param("std", STD_KIND);
            let result = cdi_all(&set, &set.category_index(), a.seed)?;
            report
                .scalar("cdi_mean", result.mean)?
                .scalar("cdi_std", result.std)?
                .scalar("categories", result.per_category.len() as f64)?;
            let mut table = Table::new(["label", "cdi", "pairs"]);
            for c in &result.per_category {
                table.push_row(vec![c.label.as_str().into(), c.cdi.into(), c.pairs.into()])?;
            }
            report.table("cdi_per_category", table);
            let mut skipped = Table::new(["label", "exemplars"]);
            for (label, n) in &result.skipped {
                skipped.push_row(vec![label.as_str().into(), (*n).into()])?;
            }
            report.table("skipped", skipped);
            Ok(report)
        }
        Command::Map(a) => {
            let (set, mut report) = with_embeddings("map", &a.embeddings)?;
            report
                .param("map_variant", MAP_VARIANT)
                .param("tie_break", "lower row index");
            report.scalar("map", map_same_different(&set, &set.category_index())?)?;
            Ok(report)
        }
        Command::Centroids(a) => {
            let (set, mut report) = with_embeddings("centroids", &a.embeddings)?;
            let table_data = centroids(&set, &set.category_index());
            let mut columns = vec!["label".to_string(), "count".to_string()];
            columns.extend((0..set.dim()).map(|j| format!("d{j}")));
            let mut table = Table::new(columns);
            for (i, label) in table_data.labels().iter().enumerate() {
                let mut cells = vec![label.as_str().into(), table_data.counts()[i].into()];
                cells.extend(table_data.centroid(i).iter().map(|&v| Cell::from(v)));
                table.push_row(cells)?;
            }
            report.scalar("categories", table_data.len() as f64)?;
            report.table("centroids", table);
            Ok(report)
        }
        Command::Neighbors(a) => {
            let (set, mut report) = with_embeddings("neighbors", &a.embeddings)?;
            report.param("query", a.query.as_str()).param("k", a.k);
            let table_data = centroids(&set, &set.category_index());
            let hits = nearest_centroids(&table_data, &a.query, to_usize(a.k))?;
            let mut table = Table::new(["rank", "label", "similarity"]);
            for (rank, (label, sim)) in hits.into_iter().enumerate() {
                table.push_row(vec![(rank + 1).into(), label.into(), sim.into()])?;
            }
            report.table("neighbors", table);
            Ok(report)
        }
        Command::FitPlm(a) => {
            let mut report = AnalysisReport::new("fit-plm");
            let lexicon = load_lexicon(&a.lexicon, &mut report)?;
            plm_params(&mut report, a.smoothing);
            let prons: Vec<PhonemeSequence> = lexicon.pronunciations().cloned().collect();
            let model = fit_trigram(&prons, a.smoothing)?;
            report
                .scalar("words", lexicon.len() as f64)?
                .scalar("duplicates", lexicon.duplicates() as f64)?
                .scalar("inventory_size", model.inventory().len() as f64)?
                .scalar("contexts", model.contexts().count() as f64)?;
            let mut inventory = Table::new(["phoneme"]);
            for s in model.inventory() {
                inventory.push_row(vec![s.as_str().into()])?;
            }
            let mut contexts = Table::new(["prev2", "prev1", "count"]);
            for ((p2, p1), total) in model.contexts() {
                contexts.push_row(vec![
                    p2.unwrap_or(BOUNDARY).into(),
                    p1.unwrap_or(BOUNDARY).into(),
                    Cell::Int(total.into()),
                ])?;
            }
            report
                .table("inventory", inventory)
                .table("contexts", contexts);
            Ok(report)
        }
        Command::Pic(a) => {
            let mut report = AnalysisReport::new("pic");
            let lexicon = load_lexicon(&a.lexicon, &mut report)?;
            let words = match &a.words {
                Some(p) => load_lexicon(p, &mut report)?,
                None => lexicon.clone(),
            };
            plm_params(&mut report, a.smoothing);
            let prons: Vec<PhonemeSequence> = lexicon.pronunciations().cloned().collect();
            let model = fit_trigram(&prons, a.smoothing)?;
            let mut table = Table::new(["word", "length", "pic"]);
            let mut total = 0.0;
            for (word, pron) in words.iter() {
                let value = pic(&model, pron)?;
                total += value;
                table.push_row(vec![word.into(), pron.len().into(), value.into()])?;
            }
            report
                .scalar("words", words.len() as f64)?
                .scalar("mean_pic", total / words.len() as f64)?;
            report.table("pic_per_word", table);
            Ok(report)
        }
        Command::Predictors(a) => {
            let (set, mut report) = with_embeddings("predictors", &a.embeddings)?;
            let lexicon = load_lexicon(&a.lexicon, &mut report)?;
            report
                .param("seed", a.seed)
                .param("min_exemplars", a.min_exemplars)
                .param("std", STD_KIND);
            plm_params(&mut report, a.smoothing);
            let prons: Vec<PhonemeSequence> = lexicon.pronunciations().cloned().collect();
            let model = fit_trigram(&prons, a.smoothing)?;
            let cdi = cdi_all(&set, &set.category_index(), a.seed)?;
            let predictors =
                build_predictor_table(&cdi, &set, &lexicon, &model, to_usize(a.min_exemplars))?;
            report
                .scalar("cdi_mean", cdi.mean)?
                .scalar("cdi_std", cdi.std)?
                .scalar("rows", predictors.rows.len() as f64)?;
            let mut rows = Table::new(["label", "cdi", "frequency", "length", "pic"]);
            for r in &predictors.rows {
                rows.push_row(vec![
                    r.label.as_str().into(),
                    r.cdi.into(),
                    r.frequency.into(),
                    r.length.into(),
                    r.pic.into(),
                ])?;
            }
            let mut correlations = correlation_table();
            for (name, result) in predictors.correlations() {
                push_correlation(&mut correlations, name, result)?;
            }
            let mut skipped = Table::new(["label", "reason"]);
            for (label, reason) in &predictors.skipped {
                skipped.push_row(vec![label.as_str().into(), reason.as_str().into()])?;
            }
            report
                .table("predictors", rows)
                .table("correlations", correlations)
                .table("skipped", skipped);
            Ok(report)
        }
        Command::Correlate(a) => {
            let mut report = AnalysisReport::new("correlate");
            let text = read(&a.input, &mut report)?;
            report.param("target", a.target.as_str());
            let columns = numeric_columns(&text)?;
            let target = columns
                .iter()
                .find(|(name, _)| *name == a.target)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::NotFound {
                    label: a.target.clone(),
                    suggestions: columns.iter().map(|(n, _)| n.clone()).collect(),
                })?;
            let mut table = correlation_table();
            for (name, values) in columns.iter().filter(|(n, _)| *n != a.target) {
                push_correlation(&mut table, name, pearson(values, &target))?;
            }
            report.scalar("n", target.len() as f64)?;
            report.table("correlations", table);
            Ok(report)
        }
        Command::Summary(a) => {
            let mut report = AnalysisReport::new("summary");
            let values = match &a.input {
                Some(path) => {
                    let text = read(path, &mut report)?;
                    text.split_whitespace()
                        .map(|tok| {
                            tok.parse::<f64>()
                                .map_err(|_| Error::Validation(format!("`{tok}` is not a number")))
                        })
                        .collect::<Result<Vec<_>>>()?
                }
                None => a.values.clone(),
            };
            report.param("std", STD_KIND);
            let s = run_summary(&values)?;
            report
                .scalar("mean", s.mean)?
                .scalar("max", s.max)?
                .scalar("min", s.min)?
                .scalar("std", s.std)?
                .scalar("n", values.len() as f64)?;
            Ok(report)
        }
        Command::Losses(a) => losses(a),
        Command::Synth(a) => {
            let spec = SynthSpec {
                num_categories: a.categories,
                exemplars_per_category: a.exemplars,
                dim: a.dim,
                separation: a.separation,
                within_spread: a.spread,
                utilized_dims: a.utilized_dims.unwrap_or(a.dim),
                orthogonal: a.orthogonal,
                seed: a.seed,
            };
            let (set, lexicon) = generate::<f64>(&spec)?;
            let mut report = AnalysisReport::new("synth");
            report
                .param("categories", spec.num_categories)
                .param("exemplars", spec.exemplars_per_category)
                .param("dim", spec.dim)
                .param("separation", spec.separation)
                .param("spread", spec.within_spread)
                .param("utilized_dims", spec.utilized_dims)
                .param("orthogonal", spec.orthogonal)
                .param("seed", spec.seed);
            let emb_text = set.to_tsv();
            write(&a.out_embeddings, &emb_text)?;
            let digest = InputDigest::from_bytes(
                a.out_embeddings.display().to_string(),
                emb_text.as_bytes(),
            );
            report.param("embeddings_sha256", digest.sha256);
            if let Some(path) = &a.out_lexicon {
                let lex_text = lexicon.to_tsv();
                write(path, &lex_text)?;
                let digest =
                    InputDigest::from_bytes(path.display().to_string(), lex_text.as_bytes());
                report.param("lexicon_sha256", digest.sha256);
            }
            report
                .scalar("rows", set.len() as f64)?
                .scalar("dim", set.dim() as f64)?;
            Ok(report)
        }
    }
}

fn losses(a: &crate::LossesArgs) -> Result<AnalysisReport> {
    let mut report = AnalysisReport::new("losses");
    // `required_if_eq` guarantees the inputs for the selected kind.
    let need = |p: &Option<std::path::PathBuf>| p.clone().expect("enforced by the argument parser");
    match a.kind {
        LossKind::Reconstruction => {
            report.param("kind", "reconstruction");
            let predicted =
                FeatureSequence::<f64>::parse_tsv(&read(&need(&a.predicted), &mut report)?)?;
            let target = FeatureSequence::<f64>::parse_tsv(&read(&need(&a.target), &mut report)?)?;
            report.scalar("loss", reconstruction_loss(&predicted, &target)?)?;
        }
        LossKind::Decoding => {
            report.param("kind", "decoding").param("log_base", LOG_BASE);
            let (inventory, probs) =
                ProbSequence::<f64>::parse_tsv(&read(&need(&a.probs), &mut report)?)?;
            let target = PhonemeSequence::parse(a.phonemes.as_deref().unwrap_or_default())?;
            report.param("phonemes", target.to_string());
            report.scalar(
                "loss",
                phonological_decoding_loss(&probs, &target, &inventory)?,
            )?;
        }
        LossKind::Triplet => {
            report
                .param("kind", "triplet")
                .param("margin", a.margin)
                .param("distance", "cosine");
            let set = load(&need(&a.embeddings), &mut report)?;
            let pairs = parse_pairs(&read(&need(&a.pairs), &mut report)?)?;
            let out = triplet_loss_batch(&set, &pairs, &TripletConfig::new(a.margin)?)?;
            report.scalar("loss", out.loss)?;
            let mut table = Table::new(["anchor", "positive", "negative", "term"]);
            for (k, &(anchor, positive)) in pairs.iter().enumerate() {
                table.push_row(vec![
                    anchor.into(),
                    positive.into(),
                    out.negatives[k].into(),
                    out.terms[k].into(),
                ])?;
            }
            report.table("triplets", table);
        }
    }
    Ok(report)
}

fn to_usize(v: u64) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

fn read(path: &Path, report: &mut AnalysisReport) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    report.input(InputDigest::from_bytes(path.display().to_string(), &bytes));
    String::from_utf8(bytes)
        .map_err(|_| Error::Validation(format!("{} is not UTF-8", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn load(path: &Path, report: &mut AnalysisReport) -> Result<EmbeddingSet64> {
    EmbeddingSet64::parse_tsv(&read(path, report)?)
}

fn with_embeddings(tool: &str, path: &Path) -> Result<(EmbeddingSet64, AnalysisReport)> {
    let mut report = AnalysisReport::new(tool);
    let set = load(path, &mut report)?;
    Ok((set, report))
}

fn load_lexicon(path: &Path, report: &mut AnalysisReport) -> Result<Lexicon> {
    Lexicon::parse_tsv(&read(path, report)?)
}

fn plm_params(report: &mut AnalysisReport, smoothing: f64) {
    report
        .param("order", 3usize)
        .param("smoothing", smoothing)
        .param("log_base", LOG_BASE)
        .param("boundary", BOUNDARY);
}

fn correlation_table() -> Table {
    Table::new(["predictor", "r", "p", "flag", "n"])
}

/// Undefined correlations (constant columns) are kept as rows with the
/// reason in place of the numbers, so the table always lists every predictor.
fn push_correlation(
    table: &mut Table,
    name: &str,
    result: Result<CorrelationResult<f64>>,
) -> Result<()> {
    match result {
        Ok(c) => table.push_row(vec![
            name.into(),
            c.r.into(),
            c.p_value.into(),
            c.flag().into(),
            c.n.into(),
        ]),
        Err(e) => table.push_row(vec![
            name.into(),
            "undefined".into(),
            "undefined".into(),
            e.kind().into(),
            Cell::Int(0),
        ]),
    }
}

/// Columns of a headed TSV whose every cell parses as a number.
fn numeric_columns(text: &str) -> Result<Vec<(String, Vec<f64>)>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().ok_or(Error::EmptyInput)?.split('\t').collect();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != header.len() {
            return Err(Error::DimensionMismatch {
                line: i + 2,
                expected: header.len(),
                found: r.len(),
            });
        }
    }
    Ok(header
        .iter()
        .enumerate()
        .filter_map(|(j, name)| {
            rows.iter()
                .map(|r| r[j].trim().parse::<f64>().ok().filter(|v| v.is_finite()))
                .collect::<Option<Vec<f64>>>()
                .map(|v| ((*name).to_owned(), v))
        })
        .collect())
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let bad = || Error::Parse {
                line: i + 1,
                message: "expected two row indices".into(),
            };
            let mut it = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad()));
            match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => Ok((a?, b?)),
                _ => Err(bad()),
            }
        })
        .collect()
}

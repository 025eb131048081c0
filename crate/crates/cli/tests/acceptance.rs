//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines are always
//! visible.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use geomlex_core::discrimination::{cdi_all, centroids, map_same_different, nearest_centroids};
use geomlex_core::geometry::{consistency_matrix, isoscore, linear_cka_pair};
use geomlex_core::objectives::{
    phonological_decoding_loss, reconstruction_loss, triplet_loss_batch, FeatureSequence,
    ProbSequence, TripletConfig,
};
use geomlex_core::phonology::{fit_trigram, fit_trigram_with_inventory, pic};
use geomlex_core::rng::seeded;
use geomlex_core::stats::{pearson, run_summary};
use geomlex_core::synth::{generate, SynthSpec};
use geomlex_core::{AnalysisReport, EmbeddingSet, PhonemeSequence};
use rand::Rng;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn set(text: &str) -> EmbeddingSet<f64> {
    EmbeddingSet::parse_tsv(text).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn rotate_scale(rows: &[Vec<f64>], seed: u64, scale: f64) -> Vec<Vec<f64>> {
    mat_mul(rows, &random_orthogonal(seed, rows[0].len()))
        .into_iter()
        .map(|r| r.into_iter().map(|x| scale * x).collect())
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let square = isoscore(&set("a\t1\t1\nb\t1\t-1\nc\t-1\t1\nd\t-1\t-1\n")).unwrap();
    ensure!(
        close(square, 1.0, 1e-9),
        "identity-covariance fixture gave {square}"
    );
    let line = isoscore(&set("a\t1\t0\t0\t0\nb\t-1\t0\t0\t0\n")).unwrap();
    ensure!(close(line, 0.0, 1e-9), "single-axis fixture gave {line}");
    let cloud = isoscore(&unlabeled(gaussian_rows(1, 20_000, 32))).unwrap();
    ensure!(cloud >= 0.9, "isotropic Gaussian gave {cloud}");
    let (flat, _) = generate::<f64>(&SynthSpec {
        num_categories: 50,
        exemplars_per_category: 40,
        dim: 16,
        utilized_dims: 1,
        within_spread: 0.5,
        ..SynthSpec::default()
    })
    .unwrap();
    let narrow = isoscore(&flat).unwrap();
    ensure!(narrow <= 0.05, "utilized_dims=1 gave {narrow}");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!(
        "fixtures {square:.3}/{line:.3}, gaussian {cloud:.4}, u=1 {narrow:.4}, {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    for trial in 0..20u64 {
        let rows: Vec<Vec<f64>> = gaussian_rows(trial, 200, 10)
            .into_iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(j, x)| x * (0.2 + j as f64))
                    .collect()
            })
            .collect();
        let scale = 0.01 + 7.0 * trial as f64;
        let a = isoscore(&unlabeled(rows.clone())).unwrap();
        let b = isoscore(&unlabeled(rotate_scale(&rows, 1000 + trial, scale))).unwrap();
        worst = worst.max((a - b).abs());
    }
    ensure!(worst < 1e-8, "largest change {worst:e}");
    Ok(format!("largest change over 20 trials {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    let x = gaussian_rows(3, 50, 8);
    let self_cka = linear_cka_pair(&unlabeled(x.clone()), &unlabeled(x.clone())).unwrap();
    ensure!(close(self_cka, 1.0, 1e-10), "CKA(X, X) = {self_cka}");
    let moved =
        linear_cka_pair(&unlabeled(x.clone()), &unlabeled(rotate_scale(&x, 4, 3.0))).unwrap();
    ensure!(close(moved, 1.0, 1e-10), "CKA(X, cXQ) = {moved}");
    let mut worst: f64 = 0.0;
    for seed in 0..20u64 {
        let a = gaussian_rows(100 + seed, 50, 8);
        let b = gaussian_rows(200 + seed, 50, 8);
        let got = linear_cka_pair(&unlabeled(a.clone()), &unlabeled(b.clone())).unwrap();
        worst = worst.max((got - cka_oracle(&a, &b)).abs());
    }
    ensure!(worst <= 1e-12, "oracle gap {worst:e}");
    let views: Vec<_> = (0..6u64)
        .map(|v| unlabeled(rotate_scale(&x, 50 + v, 1.0 + v as f64)))
        .collect();
    let m = consistency_matrix(&views).unwrap();
    ensure!(m.comparisons() == 15, "{} comparisons", m.comparisons());
    Ok(format!(
        "oracle gap {worst:.1e}, 6 views -> {} comparisons",
        m.comparisons()
    ))
}

fn criterion_4() -> Outcome {
    let (ortho, _) = generate::<f64>(&SynthSpec {
        num_categories: 8,
        exemplars_per_category: 5,
        dim: 16,
        within_spread: 0.0,
        orthogonal: true,
        ..SynthSpec::default()
    })
    .unwrap();
    let index = ortho.category_index();
    let cdi = cdi_all(&ortho, &index, 0).unwrap();
    ensure!(
        close(cdi.mean, 1.0, 1e-9),
        "orthogonal CDI mean {}",
        cdi.mean
    );
    let map = map_same_different(&ortho, &index).unwrap();
    ensure!(map == 1.0, "orthogonal mAP {map}");
    let same = set("a\t1\t2\na\t1\t2\nb\t1\t2\nb\t1\t2\nc\t1\t2\n");
    let flat = cdi_all(&same, &same.category_index(), 0).unwrap();
    ensure!(
        flat.per_category.iter().all(|c| close(c.cdi, 0.0, 1e-12)),
        "identical set CDI {:?}",
        flat.per_category
    );
    Ok(format!(
        "CDI {:.12}, mAP {map}, identical set CDI {:.1e}",
        cdi.mean, flat.mean
    ))
}

fn criterion_5() -> Outcome {
    let (data, _) = generate::<f64>(&SynthSpec {
        num_categories: 10,
        exemplars_per_category: 8,
        dim: 16,
        within_spread: 0.8,
        seed: 5,
        ..SynthSpec::default()
    })
    .unwrap();
    let index = data.category_index();
    let cdi = cdi_all(&data, &index, 9).unwrap();
    let mut gap: f64 = 0.0;
    for c in &cdi.per_category {
        gap = gap.max((c.cdi - cdi_oracle(&data, &c.label, 9)).abs());
    }
    ensure!(gap <= 1e-12, "CDI oracle gap {gap:e}");
    let rows = rows_of(&data);
    let map = map_same_different(&data, &index).unwrap();
    let map_gap = (map - map_oracle(&rows, data.labels()).unwrap()).abs();
    ensure!(map_gap <= 1e-12, "mAP oracle gap {map_gap:e}");

    let table = centroids(&data, &index);
    for (q, label) in table.labels().iter().enumerate() {
        let mut expected: Vec<(f64, &String)> = table
            .labels()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != q)
            .map(|(i, l)| (cosine(table.centroid(q), table.centroid(i)), l))
            .collect();
        expected.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(b.1)));
        let got = nearest_centroids(&table, label, 9).unwrap();
        let got_labels: Vec<&String> = got.iter().map(|(l, _)| l).collect();
        let want_labels: Vec<&String> = expected.iter().map(|(_, l)| *l).collect();
        ensure!(
            got_labels == want_labels,
            "neighbour order differs for {label}"
        );
    }
    Ok(format!(
        "CDI gap {gap:.1e}, mAP gap {map_gap:.1e}, neighbour orders identical"
    ))
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let grid = [0.25, 0.5, 0.75, 1.0, 1.25];
    let (mut cdis, mut maps) = (Vec::new(), Vec::new());
    for &separation in &grid {
        let (data, _) = generate::<f64>(&SynthSpec {
            num_categories: 20,
            exemplars_per_category: 10,
            dim: 16,
            separation,
            within_spread: 0.5,
            utilized_dims: 16,
            orthogonal: false,
            seed: 6,
        })
        .unwrap();
        let index = data.category_index();
        cdis.push(cdi_all(&data, &index, 0).unwrap().mean);
        maps.push(map_same_different(&data, &index).unwrap());
    }
    let r = pearson(&cdis, &maps).unwrap().r;
    let elapsed = start.elapsed();
    ensure!(strictly_increasing(&cdis), "CDI not monotone: {cdis:?}");
    ensure!(strictly_increasing(&maps), "mAP not monotone: {maps:?}");
    ensure!(r > 0.9, "r = {r}");
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!(
        "CDI {cdis:.3?}, mAP {maps:.3?}, r = {r:.4}, {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_7() -> Outcome {
    let grid = [1usize, 4, 8, 12, 16];
    let (mut isos, mut maps) = (Vec::new(), Vec::new());
    for &u in &grid {
        let (data, _) = generate::<f64>(&SynthSpec {
            num_categories: 20,
            exemplars_per_category: 10,
            dim: 16,
            separation: 1.0,
            within_spread: 0.5,
            utilized_dims: u,
            orthogonal: false,
            seed: 7,
        })
        .unwrap();
        isos.push(isoscore(&data).unwrap());
        maps.push(map_same_different(&data, &data.category_index()).unwrap());
    }
    let r = pearson(&isos, &maps).unwrap().r;
    ensure!(r > 0.8, "r = {r} (isoscore {isos:?}, mAP {maps:?})");
    Ok(format!("isoscore {isos:.3?}, mAP {maps:.3?}, r = {r:.4}"))
}

fn criterion_8() -> Outcome {
    let uniform = fit_trigram_with_inventory::<f64, _>(&[], 1.0, ["A", "B", "C", "D"]).unwrap();
    let value = pic(&uniform, &PhonemeSequence::parse("A B C").unwrap()).unwrap();
    ensure!(close(value, 3.0 * 4f64.ln(), 1e-12), "uniform PIC {value}");
    let word = PhonemeSequence::parse("K AE T").unwrap();
    let single = fit_trigram::<f64>(std::slice::from_ref(&word), 0.0).unwrap();
    let zero = pic(&single, &word).unwrap();
    ensure!(zero == 0.0, "deterministic PIC {zero}");
    let (_, lexicon) = generate::<f64>(&SynthSpec {
        num_categories: 60,
        seed: 8,
        ..SynthSpec::default()
    })
    .unwrap();
    let prons: Vec<PhonemeSequence> = lexicon.pronunciations().cloned().collect();
    let model = fit_trigram::<f64>(&prons, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    let mut contexts = 0;
    for ((a, b), _) in model.contexts() {
        let total: f64 = model.distribution(a, b).unwrap().iter().sum();
        worst = worst.max((total - 1.0).abs());
        contexts += 1;
    }
    ensure!(worst <= 1e-9, "distribution sum off by {worst:e}");
    Ok(format!("uniform {value:.12}, deterministic {zero}, {contexts} contexts sum to 1 within {worst:.1e}"))
}

fn criterion_9() -> Outcome {
    let x: Vec<f64> = (0..10).map(f64::from).collect();
    let up: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
    let down: Vec<f64> = x.iter().map(|v| 5.0 - 0.25 * v).collect();
    let (ru, rd) = (pearson(&x, &up).unwrap().r, pearson(&x, &down).unwrap().r);
    ensure!(
        close(ru, 1.0, 1e-12) && close(rd, -1.0, 1e-12),
        "affine r = {ru}, {rd}"
    );
    let mut worst: f64 = 0.0;
    for n in [5usize, 10, 30] {
        for trial in 0..4u64 {
            let a: Vec<f64> = gaussian_rows(n as u64 * 10 + trial, n, 1)
                .into_iter()
                .map(|r| r[0])
                .collect();
            let e: Vec<f64> = gaussian_rows(n as u64 * 10 + trial + 5000, n, 1)
                .into_iter()
                .map(|r| r[0])
                .collect();
            let b: Vec<f64> = a.iter().zip(&e).map(|(p, q)| 0.5 * p + q).collect();
            let c = pearson(&a, &b).unwrap();
            let r = r_oracle(&a, &b);
            let nu = (n - 2) as f64;
            let t = r * (nu / (1.0 - r * r)).sqrt();
            worst = worst.max((c.p_value - p_quadrature(t, nu)).abs());
        }
    }
    ensure!(worst <= 1e-6, "p-value gap {worst:e}");
    // Six runs with mean 0.183 and population std 0.0024.
    let (mean, std): (f64, f64) = (0.183, 0.0024);
    let runs: Vec<f64> = [1.0, -1.0, 1.0, -1.0, 1.0, -1.0]
        .iter()
        .map(|s| mean + s * std)
        .collect();
    let summary = run_summary(&runs).unwrap();
    ensure!(
        close(summary.mean, mean, 1e-12) && close(summary.std, std, 1e-12),
        "summary {summary:?}"
    );
    Ok(format!(
        "p-value gap {worst:.1e}, summary {:.4}/{:.4}",
        summary.mean, summary.std
    ))
}

fn criterion_10() -> Outcome {
    let frames =
        |rows: &[&[f64]]| FeatureSequence::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap();
    let same = frames(&[&[1.0, -2.0], &[0.5, 3.0]]);
    ensure!(
        reconstruction_loss(&same, &same).unwrap() == 0.0,
        "identity reconstruction"
    );
    ensure!(
        reconstruction_loss(&frames(&[&[0.0, 0.0]]), &frames(&[&[3.0, 4.0]])).unwrap() == 5.0,
        "3-4-5 reconstruction"
    );
    ensure!(
        reconstruction_loss(
            &frames(&[&[0.0, 0.0], &[0.0, 0.0]]),
            &frames(&[&[3.0, 4.0], &[0.0, 1.0]])
        )
        .unwrap()
            == 6.0,
        "additive reconstruction"
    );

    let inventory: Vec<String> = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
    let target = PhonemeSequence::parse("A C B").unwrap();
    let onehot = ProbSequence::new(vec![
        vec![1.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![0.0, 1.0, 0.0],
    ])
    .unwrap();
    ensure!(
        phonological_decoding_loss(&onehot, &target, &inventory).unwrap() == 0.0,
        "one-hot decoding"
    );
    let third = 1.0 / 3.0;
    let uniform = ProbSequence::new(vec![vec![third; 3]; 3]).unwrap();
    let u = phonological_decoding_loss(&uniform, &target, &inventory).unwrap();
    ensure!(close(u, 3.0 * 3f64.ln(), 1e-12), "uniform decoding {u}");
    let single = ProbSequence::new(vec![vec![0.5, 0.25, 0.25]]).unwrap();
    let l = phonological_decoding_loss(&single, &PhonemeSequence::parse("A").unwrap(), &inventory)
        .unwrap();
    ensure!(close(l, 2f64.ln(), 1e-12), "single-term decoding {l}");

    let config = TripletConfig::default();
    // Anchor (1,0); positive identical (d=0); negative orthogonal (d=1).
    let satisfied = set("a\t1\t0\na\t2\t0\nb\t0\t1\n");
    let t = triplet_loss_batch(&satisfied, &[(0, 1)], &config).unwrap();
    ensure!(t.terms == vec![0.0], "margin-satisfied term {:?}", t.terms);
    // d(a,+) = 0.5 at 60 degrees; d(a,-) = 0.2 at cos 0.8.
    let violated = set("a\t1\t0\na\t0.5\t0.8660254037844386\nb\t0.8\t0.6\n");
    let t = triplet_loss_batch(&violated, &[(0, 1)], &config).unwrap();
    ensure!(
        close(t.terms[0], 0.7, 1e-12),
        "arithmetic term {}",
        t.terms[0]
    );

    let mut batches = 0;
    for seed in 0..50u64 {
        let mut rng = seeded(seed);
        let labels: Vec<String> = (0..16)
            .map(|_| format!("c{}", rng.random_range(0..4)))
            .collect();
        let rows = gaussian_rows(seed + 77, 16, 6);
        let data = EmbeddingSet::new(labels.clone(), rows.clone()).unwrap();
        let pairs: Vec<(usize, usize)> = (0..16)
            .filter_map(|a| {
                (0..16)
                    .find(|&p| p != a && labels[p] == labels[a])
                    .map(|p| (a, p))
            })
            .collect();
        if pairs.is_empty() || labels.iter().all(|l| *l == labels[0]) {
            continue;
        }
        let out = triplet_loss_batch(&data, &pairs, &config).unwrap();
        let mut total = 0.0;
        for (k, &(a, p)) in pairs.iter().enumerate() {
            let (neg, d_neg) = (0..16)
                .filter(|&r| labels[r] != labels[a])
                .map(|r| (r, 1.0 - cosine(&rows[a], &rows[r])))
                .fold(None::<(usize, f64)>, |best, cur| match best {
                    Some(b) if b.1 <= cur.1 => Some(b),
                    _ => Some(cur),
                })
                .unwrap();
            ensure!(
                out.negatives[k] == neg,
                "batch {seed}: negative {} vs {neg}",
                out.negatives[k]
            );
            let term = (0.4 + 1.0 - cosine(&rows[a], &rows[p]) - d_neg).max(0.0);
            ensure!(
                close(out.terms[k], term, 1e-12),
                "batch {seed}: term mismatch"
            );
            total += term;
        }
        ensure!(
            close(out.loss, total / pairs.len() as f64, 1e-12),
            "batch {seed}: loss mismatch"
        );
        batches += 1;
    }
    ensure!(batches == 50, "only {batches} usable batches");
    Ok(format!("fixtures exact, {batches} mined batches match"))
}

fn cli(args: &[&str], dir: &Path) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_geomlex"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let write = |name: &str, text: &str| std::fs::write(d.join(name), text).unwrap();
    let (_, code) = cli(
        &[
            "synth",
            "--categories",
            "12",
            "--exemplars",
            "6",
            "--spread",
            "0.6",
            "--seed",
            "3",
            "--out-embeddings",
            "e.tsv",
            "--out-lexicon",
            "l.tsv",
        ],
        d,
    );
    ensure!(code == 0, "synth exited {code}");
    let (_, code) = cli(
        &[
            "synth",
            "--seed",
            "4",
            "--categories",
            "12",
            "--exemplars",
            "6",
            "--out-embeddings",
            "f.tsv",
        ],
        d,
    );
    ensure!(code == 0, "synth exited {code}");
    write("frames_a.tsv", "0\t0\n1\t1\n");
    write("frames_b.tsv", "3\t4\n1\t2\n");
    write("probs.tsv", "A\tB\n0.5\t0.5\n0.25\t0.75\n");
    write("pairs.tsv", "0\t1\n6\t7\n12\t13\n");
    write("runs.txt", "0.18 0.19 0.181 0.186\n");
    write(
        "table.tsv",
        "word\tcdi\tlen\tfreq\nx\t0.1\t3\t9\ny\t0.4\t5\t2\nz\t0.3\t4\t4\nw\t0.8\t7\t1\n",
    );

    let commands: Vec<Vec<&str>> = vec![
        vec!["isoscore", "--embeddings", "e.tsv"],
        vec![
            "simdist",
            "--embeddings",
            "e.tsv",
            "--max-pairs",
            "50",
            "--seed",
            "2",
        ],
        vec!["cka", "--a", "e.tsv", "--b", "f.tsv"],
        vec!["consistency", "--embeddings", "e.tsv", "f.tsv", "e.tsv"],
        vec!["cdi", "--embeddings", "e.tsv", "--seed", "5"],
        vec!["map", "--embeddings", "e.tsv"],
        vec!["centroids", "--embeddings", "e.tsv"],
        vec![
            "neighbors",
            "--embeddings",
            "e.tsv",
            "--query",
            "w0003",
            "--k",
            "4",
        ],
        vec!["fit-plm", "--lexicon", "l.tsv"],
        vec!["pic", "--lexicon", "l.tsv"],
        vec![
            "predictors",
            "--embeddings",
            "e.tsv",
            "--lexicon",
            "l.tsv",
            "--seed",
            "1",
        ],
        vec!["correlate", "--input", "table.tsv", "--target", "cdi"],
        vec!["summary", "--input", "runs.txt"],
        vec![
            "losses",
            "--kind",
            "reconstruction",
            "--predicted",
            "frames_a.tsv",
            "--target",
            "frames_b.tsv",
        ],
        vec![
            "losses",
            "--kind",
            "decoding",
            "--probs",
            "probs.tsv",
            "--phonemes",
            "A B",
        ],
        vec![
            "losses",
            "--kind",
            "triplet",
            "--embeddings",
            "e.tsv",
            "--pairs",
            "pairs.tsv",
        ],
        vec!["synth", "--seed", "9", "--out-embeddings", "g.tsv"],
    ];
    let mut scalars = 0;
    for args in &commands {
        let (first, code) = cli(args, d);
        ensure!(code == 0, "{args:?} exited {code}");
        let (second, _) = cli(args, d);
        ensure!(
            first == second,
            "{args:?} is not byte-identical across runs"
        );

        let mut serial = vec!["--threads", "1"];
        serial.extend(args);
        let mut parallel = vec!["--threads", "4"];
        parallel.extend(args);
        let parse =
            |bytes: Vec<u8>| AnalysisReport::from_json(&String::from_utf8(bytes).unwrap()).unwrap();
        let a = parse(cli(&serial, d).0);
        let b = parse(cli(&parallel, d).0);
        ensure!(
            a.scalars.len() == b.scalars.len(),
            "{args:?}: scalar sets differ"
        );
        for ((name, x), (_, y)) in a.scalars.iter().zip(&b.scalars) {
            let rel = (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE);
            ensure!(x == y || rel <= 1e-9, "{args:?}: {name} {x} vs {y}");
            scalars += 1;
        }
    }
    let (_, code) = cli(&["frobnicate"], d);
    ensure!(code == 2, "unknown subcommand exited {code}");
    Ok(format!(
        "{} invocations byte-identical, {scalars} scalars agree across thread counts",
        commands.len()
    ))
}

fn main() {
    let criteria: [(&str, Check); 11] = [
        ("isotropy extremes", criterion_1),
        ("isotropy invariances", criterion_2),
        ("CKA correctness", criterion_3),
        ("discriminability fixtures", criterion_4),
        ("oracle equivalence", criterion_5),
        ("separation grid: CDI vs mAP", criterion_6),
        ("utilization grid: isoscore vs mAP", criterion_7),
        ("PIC", criterion_8),
        ("statistics", criterion_9),
        ("losses", criterion_10),
        ("CLI determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qgame::format::{GameFile, ReportFile, StateFile, ValueCertificateFile};
use qgame::trajectory::header;
use qgame_core::games::{maxent_game, random_game, zero_sum_game, ClassicalBimatrix, RandomKind};
use qgame_core::linalg::{paulis, ComplexMatrix, DensityMatrix, HermitianMatrix};
use qgame_core::sampling::{random_density, rng_from_seed};
use tempfile::TempDir;

fn qgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qgame_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgame"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    let head = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (head, rows)
}

fn column(head: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let idx = head.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[idx].parse().unwrap()).collect()
}

#[test]
fn gen_zero_sum_negates_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = qgame(&["gen", "--kind", "zero-sum", "--dims", "2,2", "--seed", "7", "--out", path_str(p)]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let file: GameFile = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    for (x, y) in file.tensors[0].iter().zip(&file.tensors[1]) {
        assert_eq!([-x[0], -x[1]], *y);
    }
}

#[test]
fn gen_polymatrix_cycle_cancels() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("p.json");
    let out = qgame(&[
        "gen", "--kind", "polymatrix", "--graph", "cycle3", "--dims", "2", "--pairwise-zero-sum", "--seed", "3", "--out",
        path_str(&p),
    ]);
    assert!(out.status.success());
    let file: GameFile = serde_json::from_slice(&fs::read(&p).unwrap()).unwrap();
    let loaded = file.to_game().unwrap();
    assert!(loaded.game.is_zero_sum());
    assert!(loaded.game.zero_sum_residual() <= 1e-9);
}

#[test]
fn gen_errors_map_to_exit_codes() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("x.json");
    assert_eq!(qgame(&["gen", "--kind", "nope", "--out", path_str(&p)]).status.code(), Some(1));
    let missing = dir.path().join("missing/x.json");
    assert_eq!(qgame(&["gen", "--kind", "general", "--out", path_str(&missing)]).status.code(), Some(2));
}

#[test]
fn csv_header_is_stable() {
    let golden = "t,utility_0,utility_1,avg_regret_0,avg_regret_1,gap_0,gap_1,max_gap,bound,\
joint_eig_0,joint_eig_1,joint_eig_2,joint_eig_3,bloch_0_x,bloch_0_y,bloch_0_z,bloch_1_x,bloch_1_y,bloch_1_z";
    assert_eq!(header(&[2, 2]).join(","), golden);
    let qubit_qutrit = "t,utility_0,utility_1,avg_regret_0,avg_regret_1,gap_0,gap_1,max_gap,bound,\
joint_eig_0,joint_eig_1,joint_eig_2,joint_eig_3,joint_eig_4,joint_eig_5,bloch_0_x,bloch_0_y,bloch_0_z";
    assert_eq!(header(&[2, 3]).join(","), qubit_qutrit);
}

#[test]
fn zero_sum_run_matches_figure_schema_and_replays() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("run");
    let out = qgame(&[
        "run", "--kind", "zero-sum", "--dims", "2,2", "--seed", "11", "--doubling", "--horizon", "4000", "--out",
        path_str(&out_dir),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (head, rows) = csv_rows(&out_dir.join("trajectory.csv"));
    assert_eq!(head, header(&[2, 2]));
    // Default stride is max(1, T/1000).
    assert_eq!(rows.len(), 1000);
    for name in ["bloch_0_x", "bloch_1_z", "joint_eig_3"] {
        assert!(head.iter().any(|h| h == name));
    }
    let gaps = column(&head, &rows, "max_gap");
    let bounds = column(&head, &rows, "bound");
    for (g, b) in gaps.iter().zip(&bounds) {
        assert!(g <= b);
    }
    for i in 0..2 {
        let x = column(&head, &rows, &format!("bloch_{i}_x"));
        let y = column(&head, &rows, &format!("bloch_{i}_y"));
        let z = column(&head, &rows, &format!("bloch_{i}_z"));
        for k in 0..rows.len() {
            assert!(x[k] * x[k] + y[k] * y[k] + z[k] * z[k] <= 1.0 + 1e-9);
        }
    }

    let replay_dir = dir.path().join("replay");
    let manifest = out_dir.join("manifest.json");
    let out = qgame(&["run", "--replay", path_str(&manifest), "--out", path_str(&replay_dir)]);
    assert!(out.status.success());
    for f in ["trajectory.csv", "manifest.json", "game.json"] {
        assert_eq!(fs::read(out_dir.join(f)).unwrap(), fs::read(replay_dir.join(f)).unwrap(), "{f}");
    }
    let m: serde_json::Value = serde_json::from_slice(&fs::read(&manifest).unwrap()).unwrap();
    let game_bytes = fs::read(out_dir.join("game.json")).unwrap();
    assert_eq!(m["game_hash"], qgame::run::sha256_hex(&game_bytes));
    assert_eq!(m["T"], 4000);
    assert_eq!(m["seeds"][0], 11);
}

#[test]
fn general_game_at_target_accuracy() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &GameFile::from_game("general", &random_game(&[2, 2], 5, RandomKind::General).unwrap(), Some(5)).to_json());
    let out_dir = dir.path().join("run");
    let out = qgame(&["run", "--game", path_str(&g), "--epsilon", "0.2", "--out", path_str(&out_dir)]);
    assert!(out.status.success());
    let (head, rows) = csv_rows(&out_dir.join("trajectory.csv"));
    assert_eq!(rows.len(), 70);
    let last = *column(&head, &rows, "max_gap").last().unwrap();
    assert!(last <= 0.2);
}

#[test]
fn run_rejects_conflicting_configuration() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("run");
    let no_schedule = qgame(&["run", "--kind", "general", "--horizon", "10", "--out", path_str(&out_dir)]);
    assert_eq!(no_schedule.status.code(), Some(1));
    let both = qgame(&["run", "--kind", "general", "--epsilon", "0.2", "--eta", "0.1", "--out", path_str(&out_dir)]);
    assert_eq!(both.status.code(), Some(1));
    let wrong_learners = qgame(&[
        "run", "--kind", "general", "--learner", "mmwu,mmwu,mmwu", "--eta", "0.1", "--horizon", "5", "--out",
        path_str(&out_dir),
    ]);
    assert_eq!(wrong_learners.status.code(), Some(1));
}

#[test]
fn batch_output_is_independent_of_thread_count() {
    let dir = TempDir::new().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out_dir = dir.path().join(format!("t{threads}"));
        let out = qgame_env(
            &[
                "run", "--kind", "general", "--dims", "2,2", "--seed", "100", "--runs", "6", "--eta", "0.1", "--horizon",
                "200", "--out", path_str(&out_dir),
            ],
            "QG_THREADS",
            threads,
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push(out_dir);
    }
    for r in 0..6 {
        for f in ["trajectory.csv", "manifest.json", "game.json"] {
            let a = fs::read(outputs[0].join(format!("run_{r:03}")).join(f)).unwrap();
            let b = fs::read(outputs[1].join(format!("run_{r:03}")).join(f)).unwrap();
            assert_eq!(a, b);
        }
    }
    let g0 = fs::read(outputs[0].join("run_000/game.json")).unwrap();
    let g1 = fs::read(outputs[0].join("run_001/game.json")).unwrap();
    assert_ne!(g0, g1);
    let bad = qgame_env(&["run", "--kind", "general", "--eta", "0.1", "--horizon", "5", "--out", path_str(&outputs[0])], "QG_THREADS", "zero");
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn pure_strategy_fixture_reaches_the_bloch_sphere() {
    // R = ½(σz ⊗ I + I ⊗ σz): Alice wants |0⟩, Bob (with −R) wants |1⟩.
    let half = HermitianMatrix::new(
        &paulis::z().kron(&ComplexMatrix::identity(2)).scale(0.5) + &ComplexMatrix::identity(2).kron(&paulis::z()).scale(0.5),
    )
    .unwrap();
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &GameFile::from_game("zero-sum", &zero_sum_game(half, 2, 2).unwrap(), None).to_json());
    let out_dir = dir.path().join("run");
    let out = qgame(&["run", "--game", path_str(&g), "--eta", "0.05", "--horizon", "4000", "--out", path_str(&out_dir)]);
    assert!(out.status.success());
    let (head, rows) = csv_rows(&out_dir.join("trajectory.csv"));
    let z0 = column(&head, &rows, "bloch_0_z");
    let z1 = column(&head, &rows, "bloch_1_z");
    assert!((z0.last().unwrap() - 1.0).abs() < 1e-3);
    assert!((z1.last().unwrap() + 1.0).abs() < 1e-3);
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let bm = ClassicalBimatrix::new(2, 2, vec![0.3, -1.0, 2.0, 0.7], vec![1.0, 0.5, -0.2, 0.0]).unwrap();
    let maxent = write(&dir, "maxent.json", &GameFile::from_game("maxent", &maxent_game(&bm).unwrap(), None).to_json());
    let mixed = write(&dir, "mixed.json", &StateFile::joint(vec![2, 2], &DensityMatrix::maximally_mixed(4)).to_json());
    let out = qgame(&["verify", "--game", path_str(&maxent), "--state", path_str(&mixed), "--kind", "qcce"]);
    assert_eq!(out.status.code(), Some(0));
    let report: ReportFile = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.verdict && report.max_gap.abs() <= 1e-9);

    let general = write(&dir, "general.json", &GameFile::from_game("general", &random_game(&[2, 2], 8, RandomKind::General).unwrap(), Some(8)).to_json());
    let mut rng = rng_from_seed(9);
    let random_state = write(&dir, "random.json", &StateFile::joint(vec![2, 2], &random_density(4, &mut rng)).to_json());
    let out = qgame(&["verify", "--game", path_str(&general), "--state", path_str(&random_state), "--kind", "qcce"]);
    assert_eq!(out.status.code(), Some(1));
    let report: ReportFile = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report.verdict && report.max_gap > 0.0);

    let pennies = ClassicalBimatrix::matching_pennies().to_quantum_game().unwrap();
    let pennies = write(&dir, "pennies.json", &GameFile::from_game("zero-sum", &pennies, None).to_json());
    let uniform = DensityMatrix::maximally_mixed(2);
    let pair = write(&dir, "pair.json", &StateFile::product(&[uniform.clone(), uniform]).to_json());
    let out = qgame(&["verify", "--game", path_str(&pennies), "--state", path_str(&pair), "--kind", "zs-value"]);
    assert_eq!(out.status.code(), Some(0));
    let cert: ValueCertificateFile = serde_json::from_slice(&out.stdout).unwrap();
    assert!(cert.lower.abs() < 1e-15 && cert.upper.abs() < 1e-15);

    let out = qgame(&["verify", "--game", path_str(&pennies), "--state", path_str(&pair), "--kind", "qne"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "junk.json", "{ not json");
    let state = write(&dir, "s.json", &StateFile::joint(vec![2, 2], &DensityMatrix::maximally_mixed(4)).to_json());
    let out = qgame(&["verify", "--game", path_str(&junk), "--state", path_str(&state), "--kind", "qcce"]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    let out = qgame(&["verify", "--game", path_str(&missing), "--state", path_str(&state), "--kind", "qcce"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn maxent_examples() {
    let out = qgame(&["maxent", "--a", "1,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["bell_state"], "e_00");
    assert_eq!(report["ppt"]["entangled"], true);
    assert!((report["ppt"]["min_eigenvalue"].as_f64().unwrap() + 0.5).abs() < 1e-9);
    assert_eq!(report["min_entry_is_qcce"], false);

    let out = qgame(&["maxent", "--a", "0.5,0.5,0.5,0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["qcce"]["max_gap"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(report["min_entry_is_qcce"], true);

    assert_eq!(qgame(&["maxent", "--a", "1,0,0"]).status.code(), Some(1));
}

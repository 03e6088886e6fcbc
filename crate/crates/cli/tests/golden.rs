//! Golden-file snapshots of the machine reports over the bundled models.
//! The machine format is a stable interface; any intentional change is
//! blessed by rerunning with `LFTOP_BLESS=1`.

use std::path::Path;
use std::process::Command;

fn lftop_stdout(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_lftop"))
        .args(args)
        .output()
        .expect("binary runs");
    String::from_utf8(out.stdout).unwrap()
}

fn assert_golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("LFTOP_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    if expected != actual {
        let actual_path = path.with_extension("actual");
        std::fs::write(&actual_path, actual).unwrap();
        panic!(
            "{name} diverged from its snapshot; actual output written to {}",
            actual_path.display()
        );
    }
}

#[test]
fn corpus_run_matches_its_snapshot() {
    let stdout = lftop_stdout(&["corpus", "run", "--format", "machine"]);
    assert_golden("corpus_run.machine.txt", &stdout);
}

#[test]
fn corpus_run_is_byte_stable_across_runs() {
    let a = lftop_stdout(&["corpus", "run", "--format", "machine"]);
    let b = lftop_stdout(&["corpus", "run", "--format", "machine"]);
    assert_eq!(a, b);
}

#[test]
fn small_suite_matches_its_snapshot() {
    let stdout = lftop_stdout(&["suite", "--seeds", "5", "--format", "machine"]);
    assert_golden("suite_seeds5.machine.txt", &stdout);
}

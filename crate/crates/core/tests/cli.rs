//! End-to-end checks of the command-line interface: exit codes, the
//! documented JSON shapes, and byte-stability of the ledger table.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_anisobounds"))
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("anisobounds-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn bounds_table_is_byte_stable() {
    let out1 = bin().args(["bounds", "--table", "--stable"]).output().unwrap();
    let out2 = bin().args(["bounds", "--table", "--stable"]).output().unwrap();
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout);
    let golden = include_bytes!("golden/bounds_table.txt");
    assert_eq!(out1.stdout, golden, "ledger table drifted from the golden file");
}

#[test]
fn bounds_case_shapes() {
    let out = bin()
        .args(["bounds", "--case", "quadric", "--n", "4", "--no-point", "--stable"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["bound"], 32);
    assert_eq!(v["results"]["kind"], "order");
    assert!(v["results"]["citation"].as_str().unwrap().contains("32"));
    assert!(v.get("wall_ms").is_none(), "--stable must strip timings");

    let out = bin()
        .args(["bounds", "--case", "torsion_primes", "--dynkin", "E8", "--stable"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["primes"], serde_json::json!([2, 3, 5]));
}

#[test]
fn bounds_out_of_ledger_is_input_error() {
    let out = bin()
        .args(["bounds", "--case", "torus", "--n", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}

#[test]
fn glnz_upsilon_small_rank() {
    let out = bin().args(["glnz", "--upsilon", "1", "--stable"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["max_order"], 2);

    let out = bin().args(["glnz", "--upsilon", "2", "--stable"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["max_order"], 12);
}

#[test]
fn bounds_del_pezzo_six() {
    let out = bin()
        .args(["bounds", "--case", "del_pezzo", "--degree", "6", "--stable"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["bound"], 432);
}

#[test]
fn glnz_closure_and_minkowski() {
    let gens = r#"{"n": 2, "generators": [
        {"n": 2, "entries": [[1, -1], [1, 0]]},
        {"n": 2, "entries": [[0, 1], [1, 0]]}
    ]}"#;
    let path = write_temp("hexagonal.json", gens);
    let out = bin()
        .args(["glnz", "--closure"])
        .arg(&path)
        .arg("--stable")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["order"], 12);

    // injective mod 3
    let out = bin()
        .args(["glnz", "--minkowski"])
        .arg(&path)
        .args(["-m", "3", "--stable"])
        .output()
        .unwrap();
    assert!(out.status.success());

    // the sign group collides mod 2: check failure, exit code 2
    let signs = r#"{"n": 2, "generators": [{"n": 2, "entries": [[-1, 0], [0, -1]]}]}"#;
    let path = write_temp("signs.json", signs);
    let out = bin()
        .args(["glnz", "--minkowski"])
        .arg(&path)
        .args(["-m", "2", "--stable"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn torus_profile_and_anisotropy() {
    let lattice = r#"{"rank": 2, "generators": [{"n": 2, "entries": [[-1, 0], [0, -1]]}]}"#;
    let path = write_temp("signs_lattice.json", lattice);
    let out = bin()
        .args(["torus", "--profile"])
        .arg(&path)
        .args(["--dmax", "12", "--stable"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["max_exact_order"], 2);

    let out = bin()
        .args(["torus", "--anisotropic"])
        .arg(&path)
        .arg("--stable")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["anisotropic"], true);
}

#[test]
fn quadform_subcommands() {
    let form = r#"{"field": {"p": 3, "k": 1}, "dim": 2, "coeffs": {"11": 1, "22": 1}}"#;
    let path = write_temp("f3_form.json", form);
    let out = bin()
        .args(["quadform", "--isotropy"])
        .arg(&path)
        .arg("--stable")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["outcome"], "Anisotropic");

    let arf = r#"{"field": {"p": 2, "k": 1}, "dim": 2, "coeffs": {"11": 1, "12": 1, "22": 1}}"#;
    let path = write_temp("f2_arf.json", arf);
    let out = bin()
        .args(["quadform", "--arf"])
        .arg(&path)
        .arg("--stable")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["arf_class"], "1");

    let rational = r#"{"field": "rationals", "dim": 2, "coeffs": {"11": 1, "22": 1}}"#;
    let path = write_temp("q_form.json", rational);
    let out = bin()
        .args(["quadform", "--reflect"])
        .arg(&path)
        .args(["--axis", "[1,0]", "--stable"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v["results"]["reflection"],
        serde_json::json!([["-1", "0"], ["0", "1"]])
    );
}

#[test]
fn csa_subcommands() {
    let out = bin()
        .args(["csa", "--weyl-identity", "3", "--stable"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["power_identity_zero"], true);

    let rotation = r#"{"n": 2, "entries": [[0, -1], [1, 0]]}"#;
    let path = write_temp("rotation.json", rotation);
    let out = bin()
        .args(["csa", "--minpoly"])
        .arg(&path)
        .args(["-N", "4", "--stable"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["r"], 1);

    let audit = r#"{"field": {"p": 5, "k": 1}, "n": 2, "pair_budget": 40}"#;
    let path = write_temp("audit_f5.json", audit);
    let out = bin()
        .args(["csa", "--audit"])
        .arg(&path)
        .args(["--mode", "projective", "--stable"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["ambient"]["holds"], true);
    assert_eq!(v["results"]["sweep"]["violations"], 0);
}

#[test]
fn brauer_subcommands() {
    let out = bin()
        .args(["brauer", "--coker", "2", "2", "--stable"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["cokernel_order"], 2);

    let delta = r#"{"field": {"p": 2, "k": 2}, "points": ["0", "1", "w", "inf"]}"#;
    let path = write_temp("delta4.json", delta);
    let out = bin()
        .args(["brauer", "--admissible"])
        .arg(&path)
        .arg("--stable")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["t"], "w");
    assert_eq!(v["results"]["raw_residue_sum"], "0");

    // odd point count over F_2: the obstruction is a failed check
    let delta3 = r#"{"field": {"p": 2, "k": 1}, "points": ["0", "1", "inf"]}"#;
    let path = write_temp("delta3.json", delta3);
    let out = bin()
        .args(["brauer", "--admissible"])
        .arg(&path)
        .arg("--stable")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let field = r#"{"p": 2, "k": 2}"#;
    let fpath = write_temp("f4.json", field);
    let out = bin()
        .args(["brauer", "--conic-class", "w"])
        .arg(&fpath)
        .arg("--stable")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["class"], "NoPoint");
}

#[test]
fn malformed_input_is_exit_1() {
    let path = write_temp("garbage.json", "{ not json");
    let out = bin()
        .args(["glnz", "--closure"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stable_outputs_are_deterministic() {
    let run = || {
        bin()
            .args(["torus", "--profile"])
            .arg(write_temp(
                "det_lattice.json",
                r#"{"rank": 2, "generators": [{"n": 2, "entries": [[0, -1], [1, 0]]}]}"#,
            ))
            .args(["--dmax", "20", "--stable"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

//! End-to-end checks of the command-line interface.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cutpaste"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn write_fixture(dir: &Path, name: &str) -> std::path::PathBuf {
    let out = run(&["fixture", name]);
    assert!(out.status.success());
    let path = dir.join(format!("{name}.tri"));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(&out.stdout).unwrap();
    path
}

#[test]
fn fixtures_validate_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["s2", "s3", "t2", "rp2", "cp2"] {
        let path = write_fixture(dir.path(), name);
        let out = run(&["validate", path.to_str().unwrap()]);
        assert!(out.status.success(), "{name}: {}", stdout(&out));
        assert!(stdout(&out).contains("valid:true"));
        // byte-identical regeneration
        let again = run(&["fixture", name]);
        assert_eq!(again.stdout, std::fs::read(&path).unwrap());
    }
}

#[test]
fn unknown_fixture_fails_with_contract_code() {
    let out = run(&["fixture", "m27"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invariants_of_the_three_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), "s3");
    let out = run(&["invariants", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "{dim:3, chi:0, kappa:1, bordism:trivial}");
}

#[test]
fn homology_of_rp2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), "rp2");
    let out = run(&["homology", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("H_0 = Z\n"), "{text}");
    assert!(text.contains("H_1 = Z/2\n"), "{text}");
    assert!(text.contains("H_2 = 0"), "{text}");
}

#[test]
fn equiv_skk_between_spheres() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = write_fixture(dir.path(), "s3");
    let t3 = write_fixture(dir.path(), "t3");
    let out = run(&["equiv", "--rel", "skk", s3.to_str().unwrap(), t3.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict:false"), "{}", stdout(&out));
    let out = run(&["equiv", "--rel", "sk", s3.to_str().unwrap(), t3.to_str().unwrap()]);
    assert!(stdout(&out).contains("verdict:true"), "{}", stdout(&out));
}

#[test]
fn equiv_skk_sphere_and_product_in_dimension_five() {
    let dir = tempfile::tempdir().unwrap();
    let s5 = write_fixture(dir.path(), "s5");
    let cp2xs1 = write_fixture(dir.path(), "cp2xs1");
    let out = run(&[
        "equiv",
        "--rel",
        "skk",
        s5.to_str().unwrap(),
        cp2xs1.to_str().unwrap(),
        "--bordism",
        "0",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("verdict:true"), "{}", stdout(&out));
}

#[test]
fn fixture_shapes() {
    let s3 = stdout(&run(&["fixture", "s3"]));
    assert_eq!(s3.matches("facet ").count(), 5, "boundary of the 4-simplex");
    let cp2 = stdout(&run(&["fixture", "cp2"]));
    assert_eq!(cp2.matches("facet ").count(), 36);
    assert!(cp2.starts_with("dim 4\nvertices 9\n"));
}

#[test]
fn k1_of_a_transposition() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = write_fixture(dir.path(), "s3");
    let out = run(&["k1", s3.to_str().unwrap(), "--perm", "1 0 2 3 4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-1");
    let out = run(&["k1", s3.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn torus_of_circle_reflection_is_klein_bottle() {
    let dir = tempfile::tempdir().unwrap();
    let s1 = write_fixture(dir.path(), "s1");
    let out = run(&["torus", s1.to_str().unwrap(), "--perm", "0 2 1"]);
    assert!(out.status.success());
    let path = dir.path().join("klein.tri");
    std::fs::write(&path, &out.stdout).unwrap();
    let h = run(&["homology", path.to_str().unwrap()]);
    let text = stdout(&h);
    assert!(text.contains("H_1 = Z + Z/2"), "{text}");
}

#[test]
fn subdivide_semisimplicial_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("delta2.simp");
    std::fs::write(
        &path,
        "kind semisimplicial\n\
         simplex 0 a\nsimplex 0 b\nsimplex 0 c\n\
         simplex 1 ab\nsimplex 1 ac\nsimplex 1 bc\n\
         simplex 2 t\n\
         face ab 0 b\nface ab 1 a\n\
         face ac 0 c\nface ac 1 a\n\
         face bc 0 c\nface bc 1 b\n\
         face t 0 bc\nface t 1 ac\nface t 2 ab\n",
    )
    .unwrap();
    let out = run(&["subdivide", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("simplex 0 ").count(), 3, "{text}");
    assert_eq!(text.matches("simplex 1 ").count(), 0, "{text}");
    let sd_path = dir.path().join("sd.simp");
    std::fs::write(&sd_path, &text).unwrap();
    let h = run(&["homology", sd_path.to_str().unwrap()]);
    assert!(stdout(&h).contains("H_0 = Z^3"), "{}", stdout(&h));
}

#[test]
fn k0_and_grid_of_a_squares_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.sq");
    std::fs::write(
        &path,
        "object E initial\nobject A\n\
         hmor hidE E E\nhmor hidA A A\nhmor hu E A\n\
         vmor vidE E E\nvmor vidA A A\nvmor vu E A\n\
         hcomp hidE hidE hidE\nhcomp hidA hidA hidA\nhcomp hidE hu hu\nhcomp hu hidA hu\n\
         vcomp vidE vidE vidE\nvcomp vidA vidA vidA\nvcomp vidE vu vu\nvcomp vu vidA vu\n\
         square hidE vidE vidE hidE\nsquare hidA vidA vidA hidA\n\
         square hu vidE vidA hu\nsquare hidE vu vu hidA\n",
    )
    .unwrap();
    let out = run(&["k0", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("group: Z\n"), "{text}");
    assert!(text.contains("class E: [0]"), "{text}");
    assert!(text.contains("class A: [1]") || text.contains("class A: [-1]"), "{text}");

    let out = run(&["grid", path.to_str().unwrap(), "--nmax", "2"]);
    assert!(out.status.success());
    let nerve_path = dir.path().join("nerve.simp");
    std::fs::write(&nerve_path, &out.stdout).unwrap();
    let h = run(&["homology", nerve_path.to_str().unwrap()]);
    assert!(stdout(&h).starts_with("H_0 = Z\n"), "{}", stdout(&h));
}

#[test]
fn parse_errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.tri");
    std::fs::write(&path, "dim x\n").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = run(&["validate", dir.path().join("nope.tri").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn contract_errors_exit_with_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let cp2xs1 = write_fixture(dir.path(), "cp2xs1");
    // dimension 5 without a bordism label
    let out = run(&["invariants", cp2xs1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let ok = run(&["invariants", cp2xs1.to_str().unwrap(), "--bordism", "0"]);
    assert!(ok.status.success());
    assert_eq!(stdout(&ok).trim(), "{dim:5, chi:0, kappa:1, bordism:supplied(0)}");
}

#[test]
fn inline_perm_overrides_file_perm_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let s1 = write_fixture(dir.path(), "s1");
    let mut text = std::fs::read_to_string(&s1).unwrap();
    text.push_str("perm 0 2 1\n");
    std::fs::write(&s1, text).unwrap();
    let out = run(&["k1", s1.to_str().unwrap(), "--perm", "0 1 2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    // file perm used when no inline one is given: reflection reverses S^1
    let out = run(&["k1", s1.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "-1");
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SIX: &str = "\
wmatrix 6
0; 0; 1; 1; 0; 0
0; 1; 0; 0; 1; 1
1; 0; 1; 0; 0; 0
0; 1; 0; 1; 0; 0
1; 0; 0; 0; 0; 0
0; 1; 0; 0; 0; 0
";

const FOUR: &str = "\
wmatrix 4
1; 0; 1; 0
0; 1; 0; 1
0; 1; 1; 1
1; 0; 1; 1
";

fn isored(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isored")).args(args).env_remove("ISORED_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn reduce_six() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "six.wm", SIX);
    let o = isored(&["reduce", s(&m), "--keep", "1,2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "wmatrix 2\n(1)/(l - 1); (1)/(l - 1)\n(1)/(l); (l + 1)/(l)\n");
}

#[test]
fn reduce_output_file_round_trips() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "six.wm", SIX);
    let out = dir.path().join("r.wm");
    let o = isored(&["reduce", s(&m), "--keep", "1,2", "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    // The written matrix parses back and has the expected spectrum.
    let o = isored(&["spectrum", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "-1 (×1)\n2 (×1)\n");
}

#[test]
fn chain_matches_direct() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "four.wm", FOUR);
    let direct = isored(&["reduce", s(&m), "--keep", "1,2"]);
    let via3 = isored(&["reduce", s(&m), "--chain", "1,2,3|1,2"]);
    let via4 = isored(&["reduce", s(&m), "--chain", "1,2,4", "--keep", "1,2"]);
    assert_eq!(code(&direct), 0);
    assert_eq!(stdout(&direct), stdout(&via3));
    assert_eq!(stdout(&direct), stdout(&via4));
}

#[test]
fn spectrum_with_multiplicities() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "six.wm", SIX);
    let o = isored(&["spectrum", s(&m)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "-1 (×1)\n0 (×2)\n1 (×2)\n2 (×1)\n");
}

#[test]
fn specinv_is_an_involution() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.wm", "wmatrix 2\n1/l; 1\n0; 2\n");
    let s1 = dir.path().join("s.wm");
    assert_eq!(code(&isored(&["specinv", s(&m), "-o", s(&s1)])), 0);
    let back = isored(&["specinv", s(&s1)]);
    assert_eq!(code(&back), 0, "{}", stderr(&back));
    assert_eq!(stdout(&back), "wmatrix 2\n(1)/(l); 1\n0; 2\n");
}

#[test]
fn spring_path_spectra_and_force() {
    let o = isored(&["spring", "--path", "4", "--boundary", "1,4", "spectrum", "--inverse"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1 (×1)\n3 (×1)\n");

    let o = isored(&["spring", "--path", "4", "--boundary", "1,4", "spectrum"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines, ["0 (×1)", "0.585786437627 (×1)", "2 (×1)", "3.41421356237 (×1)"]);

    let o = isored(&["spring", "--path", "4", "force", "--omega", "0", "--u", "1,1,1,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0\n0\n0\n0\n");
}

#[test]
fn spring_network_file() {
    let dir = TempDir::new().unwrap();
    let net = write(&dir, "net.txt", "springs 4\n1 2 1\n2 3 1\n3 4 1\n");
    let a = isored(&["spring", "--network", s(&net), "--boundary", "1,4", "matrix"]);
    let b = isored(&["spring", "--path", "4", "--boundary", "1,4", "matrix"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
}

fn csv_rows(text: &str) -> Vec<(f64, f64, f64, u8)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,value,flag"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn pseudospec_csv_and_pgm() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "six.wm", SIX);
    let pgm = dir.path().join("p.pgm");
    let o = isored(&["pseudospec", s(&m), "--window", "-1,1,-1,1", "--grid", "3x2", "--pgm", s(&pgm)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.2 > 0.0 && r.3 == 0));
    // Symmetric about the real axis for a real matrix.
    assert_eq!(rows[0].2, rows[3].2);
    let img = std::fs::read(&pgm).unwrap();
    assert!(img.starts_with(b"P5\n"));
    let header_end = img.windows(5).position(|w| w == b"\n255\n").unwrap() + 5;
    let header = String::from_utf8_lossy(&img[..header_end]);
    assert!(header.contains("\n3 2\n"), "{header}");
    assert_eq!(img.len(), header_end + 6);
}

#[test]
fn raster_output_is_deterministic_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "six.wm", SIX);
    let args = ["pseudores", s(&m), "--window", "-2,2,-2,2", "--grid", "17x13", "--norm", "inf"];
    let one = Command::new(env!("CARGO_BIN_EXE_isored")).args(args).env("ISORED_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_isored")).args(args).env("ISORED_THREADS", "4").output().unwrap();
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn gershgorin_raster_contains_spectrum() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "four.wm", FOUR);
    let o = isored(&["gersh", s(&m), "--window", "-1,3,-1,1", "--grid", "5x3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    // Values are bit masks of the discs containing each point; the
    // eigenvalue 1 lies in all four, far corners in none.
    let at = |re: f64, im: f64| rows.iter().find(|r| r.0 == re && r.1 == im).unwrap().2;
    assert_eq!(at(1.0, 0.0), 15.0);
    assert_eq!(at(-1.0, 1.0), 0.0);
}

#[test]
fn check_inclusion_reports_and_fails() {
    let dir = TempDir::new().unwrap();
    let inner = dir.path().join("inner.csv");
    let outer = dir.path().join("outer.csv");
    let m = write(&dir, "six.wm", SIX);
    let r = write(&dir, "r.wm", "");
    assert_eq!(code(&isored(&["reduce", s(&m), "--keep", "1,2", "-o", s(&r)])), 0);
    let grid = ["--window", "-2,3,-2,2", "--grid", "11x9"];
    let run = |mat: &Path, out: &Path| {
        let mut a = vec!["pseudospec", s(mat)];
        a.extend(grid);
        a.extend(["-o", s(out)]);
        assert_eq!(code(&isored(&a)), 0);
    };
    run(&r, &inner);
    run(&m, &outer);
    let ok = isored(&["check-inclusion", s(&inner), s(&outer), "--eps", "0.316"]);
    assert_eq!(code(&ok), 0, "{}{}", stdout(&ok), stderr(&ok));
    assert!(stdout(&ok).contains(" 0 violation(s)"));

    // Swapped, the full matrix region is not inside the reduced one.
    let bad = isored(&["check-inclusion", s(&outer), s(&inner), "--eps", "0.316"]);
    assert_eq!(code(&bad), 1, "{}", stdout(&bad));
    assert!(stdout(&bad).contains("violation at"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "six.wm", SIX);
    let bad = write(&dir, "bad.wm", "wmatrix 2\n1; 2\n3\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["spectrum", "/definitely/not/here.wm"],
        vec!["spectrum", s(&bad)],
        vec!["reduce", s(&m)],
        vec!["reduce", s(&m), "--keep", "7"],
        vec!["reduce", s(&m), "--keep", "x"],
        vec!["pseudospec", s(&m), "--window", "0,1,0"],
        vec!["pseudospec", s(&m), "--window", "0,1,0,1", "--norm", "3"],
        vec!["spring", "--path", "4", "--boundary", "5", "matrix"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = isored(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
    }
    let o = isored(&["spectrum", s(&bad)]);
    assert!(stderr(&o).contains("bad.wm"), "{}", stderr(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_isored"))
        .args(["spectrum", s(&m)])
        .env("ISORED_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn math_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    // M_II − λI vanishes identically once the kept block is removed.
    let m = write(&dir, "sing.wm", "wmatrix 2\n0; 1\n1; l\n");
    let o = isored(&["reduce", s(&m), "--keep", "1"]);
    assert_eq!(code(&o), 1, "{}{}", stdout(&o), stderr(&o));
}

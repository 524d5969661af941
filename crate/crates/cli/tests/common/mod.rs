use std::path::Path;
use std::process::Command;

pub struct Case {
    pub line: usize,
    pub args: Vec<String>,
    pub stdout: String,
    pub code: i32,
}

pub fn load_cases(path: &Path) -> Vec<Case> {
    let text = std::fs::read_to_string(path).expect("golden file");
    let mut cases = Vec::new();
    let mut current: Option<(usize, Vec<String>, Vec<String>)> = None;
    for (n, line) in text.lines().enumerate() {
        if let Some(cmd) = line.strip_prefix("$ ") {
            assert!(current.is_none(), "line {}: unterminated case", n + 1);
            let args = shlex::split(cmd).unwrap_or_else(|| panic!("line {}: bad quoting", n + 1));
            current = Some((n + 1, args, Vec::new()));
        } else if let Some(code) = line.strip_prefix("? ") {
            let (line, args, out) = current.take().expect("exit code without a command");
            let mut stdout = out.join("\n");
            if !out.is_empty() {
                stdout.push('\n');
            }
            cases.push(Case {
                line,
                args,
                stdout,
                code: code.trim().parse().expect("exit code"),
            });
        } else if let Some((_, _, out)) = current.as_mut() {
            out.push(line.to_string());
        }
    }
    assert!(current.is_none(), "unterminated case at end of file");
    cases
}

pub fn run(args: &[String]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_thompson"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("spawn thompson");
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().unwrap_or(-1),
    )
}

/// Runs every case and returns a description of each mismatch.
pub fn check_examples() -> (usize, Vec<String>) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/examples.txt");
    let cases = load_cases(&path);
    let mut failures = Vec::new();
    for c in &cases {
        let (stdout, code) = run(&c.args);
        // failing commands print nothing we pin down
        let out_ok = c.code == 2 || stdout == c.stdout;
        if !out_ok || code != c.code {
            failures.push(format!(
                "line {}: {:?}\n  expected ({}): {:?}\n  got ({}): {:?}",
                c.line, c.args, c.code, c.stdout, code, stdout
            ));
        }
    }
    (cases.len(), failures)
}

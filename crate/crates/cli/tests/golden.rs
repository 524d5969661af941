mod common;

#[test]
fn examples_match() {
    let (n, failures) = common::check_examples();
    assert!(n > 100);
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

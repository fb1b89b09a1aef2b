//! Acceptance: end-to-end CLI run with deterministic outputs.

mod common;

use common::{lawful_series, run, stdout_of, write_series};

#[test]
fn criterion_7_cli_end_to_end_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("series.csv");
    write_series(&data, &lawful_series(120, 20090601));

    let mut model_bytes = Vec::new();
    let mut fit_stdout = String::new();
    let mut predict_stdout = String::new();

    for pass in 0..2 {
        let model = dir.path().join(format!("model-{pass}.json"));
        let fit = run(&[
            "fit",
            "--data",
            data.to_str().unwrap(),
            "--model-out",
            model.to_str().unwrap(),
        ]);
        assert!(fit.status.success(), "fit failed: {fit:?}");

        let predict = run(&[
            "predict",
            "--model",
            model.to_str().unwrap(),
            "--data",
            data.to_str().unwrap(),
        ]);
        assert!(predict.status.success(), "predict failed: {predict:?}");

        let bytes = std::fs::read(&model).unwrap();
        let fit_out = stdout_of(&fit).replace(&format!("model-{pass}.json"), "model.json");
        let predict_out = stdout_of(&predict);
        if pass == 0 {
            model_bytes = bytes;
            fit_stdout = fit_out;
            predict_stdout = predict_out;
        } else {
            assert_eq!(bytes, model_bytes, "model files differ between runs");
            assert_eq!(fit_out, fit_stdout, "fit stdout differs between runs");
            assert_eq!(
                predict_out, predict_stdout,
                "predict stdout differs between runs"
            );
        }
    }

    // The forecast line is `Forecasted load (in MW) = <value>` with exactly
    // four decimal places.
    let line = predict_stdout
        .lines()
        .find(|l| l.starts_with("Forecasted load"))
        .expect("forecast line present");
    let value = line
        .strip_prefix("Forecasted load (in MW) = ")
        .unwrap_or_else(|| panic!("unexpected line shape: {line}"));
    let (integral, decimals) = value
        .split_once('.')
        .unwrap_or_else(|| panic!("no decimal point in {value}"));
    assert!(!integral.is_empty() && integral.chars().all(|c| c.is_ascii_digit() || c == '-'));
    assert_eq!(decimals.len(), 4, "expected 4 decimals in {value}");
    assert!(decimals.chars().all(|c| c.is_ascii_digit()));
    value.parse::<f64>().expect("forecast value parses");

    println!("ACCEPTANCE 7 (CLI fit -> predict, deterministic outputs): PASS");
}

//! The `wcli` front end driven in-process, capturing output and exit code.

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    for args in [
        vec!["wcli", "central-charge", "E7", "E7a1", "--p", "18", "--u", "17"],
        vec!["wcli", "compare", "universal B3 principal", "principal B3 principal p=8 u=7", "--order", "10"],
        vec!["wcli", "char", "boundary", "G2"],
    ] {
        out.clear();
        err.clear();
        let code = exw::cli::run(args.clone(), &mut out, &mut err);
        println!("$ {}  -> exit {code}", args[1..].join(" "));
        print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    }
}

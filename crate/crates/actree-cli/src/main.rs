//! Command-line front end for the asymptotic-Cayley-tree toolkit.

fn main() {
    eprintln!("not yet wired up");
    std::process::exit(2);
}

fn main() { std::process::exit(polc::cli::run(std::env::args().skip(1).collect())); }

fn main() {
    std::process::exit(spike_tyke_cli::run(std::env::args_os()));
}

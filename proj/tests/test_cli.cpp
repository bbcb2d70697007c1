#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

// Runs the CLI with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(IDA_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::vector<std::uint8_t> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
}

void dump(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    REQUIRE(out.good());
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("disperse then reconstruct any 3 of 5 is byte-identical") {
    TempDir tmp("ida_cli_roundtrip");
    const auto bytes = testutil::make_bytes(1024, 17);
    dump(tmp.path / "input.bin", bytes);

    const RunResult d = run_cli("disperse --m 3 --n 5 --in " + (tmp.path / "input.bin").string() +
                                " --out " + tmp.path.string());
    CHECK(d.exit_code == 0);
    CHECK(d.output.find("m: 3") != std::string::npos);
    CHECK(d.output.find("n: 5") != std::string::npos);
    CHECK(d.output.find("family: cauchy") != std::string::npos);
    CHECK(d.output.find("piece payload: 342 symbols") != std::string::npos);
    for (int j = 0; j < 5; ++j)
        CHECK(fs::exists(tmp.path / ("input.p" + std::to_string(j) + ".ida")));

    const RunResult r = run_cli("reconstruct --out " + (tmp.path / "out.bin").string() + " " +
                                (tmp.path / "input.p1.ida").string() + " " +
                                (tmp.path / "input.p3.ida").string() + " " +
                                (tmp.path / "input.p4.ida").string());
    CHECK(r.exit_code == 0);
    CHECK(slurp(tmp.path / "out.bin") == bytes);
}

TEST_CASE("disperse rejects an explicit matrix with an identity column") {
    TempDir tmp("ida_cli_invalid");
    dump(tmp.path / "input.bin", testutil::make_bytes(64, 1));
    // Column 1 of this 2x3 matrix is e_0.
    const RunResult d = run_cli("disperse --m 2 --n 3 --code explicit --points 03,01,02,05,00,07" +
                                std::string(" --in ") + (tmp.path / "input.bin").string() +
                                " --out " + tmp.path.string());
    CHECK(d.exit_code == 2);
    CHECK(d.output.find("identity column") != std::string::npos);
}

TEST_CASE("reconstruct with too few pieces exits 2") {
    TempDir tmp("ida_cli_insufficient");
    dump(tmp.path / "input.bin", testutil::make_bytes(128, 2));
    REQUIRE(run_cli("disperse --m 3 --n 5 --in " + (tmp.path / "input.bin").string() + " --out " +
                    tmp.path.string())
                .exit_code == 0);
    const RunResult r = run_cli("reconstruct --out " + (tmp.path / "out.bin").string() + " " +
                                (tmp.path / "input.p0.ida").string() + " " +
                                (tmp.path / "input.p1.ida").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("insufficient pieces") != std::string::npos);
}

TEST_CASE("a flipped payload byte exits 3 naming the piece") {
    TempDir tmp("ida_cli_corrupt");
    dump(tmp.path / "input.bin", testutil::make_bytes(256, 3));
    REQUIRE(run_cli("disperse --m 3 --n 5 --in " + (tmp.path / "input.bin").string() + " --out " +
                    tmp.path.string())
                .exit_code == 0);

    // Flip one byte near the end of the payload of piece 2.
    auto blob = slurp(tmp.path / "input.p2.ida");
    blob[blob.size() - 6] ^= 0x01;
    dump(tmp.path / "input.p2.ida", blob);

    const RunResult r = run_cli("reconstruct --out " + (tmp.path / "out.bin").string() + " " +
                                (tmp.path / "input.p0.ida").string() + " " +
                                (tmp.path / "input.p2.ida").string() + " " +
                                (tmp.path / "input.p4.ida").string());
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("checksum mismatch") != std::string::npos);
    CHECK(r.output.find("piece 2") != std::string::npos);
}

TEST_CASE("analyze: cauchy spec is strong, exit 0, json by default") {
    const RunResult r = run_cli("analyze --spec cauchy:8:3:5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"verdict\": \"strong_certified\"") != std::string::npos);
}

TEST_CASE("analyze: the weak fixture matrix exits 1 with a printed witness") {
    TempDir tmp("ida_cli_weak");
    std::ofstream(tmp.path / "g.txt") << "8 2 3\n01 01 02\n01 02 00\n";

    const RunResult json = run_cli("analyze --matrix " + (tmp.path / "g.txt").string());
    CHECK(json.exit_code == 1);
    CHECK(json.output.find("\"verdict\": \"weak\"") != std::string::npos);
    CHECK(json.output.find("\"recoverable_segments\"") != std::string::npos);

    const RunResult text =
        run_cli("analyze --format text --matrix " + (tmp.path / "g.txt").string());
    CHECK(text.exit_code == 1);
    CHECK(text.output.find("verdict: weak") != std::string::npos);
    CHECK(text.output.find("*c2") != std::string::npos);
}

TEST_CASE("analyze: strong_by_exhaustion also exits 0") {
    TempDir tmp("ida_cli_sbe");
    // Certificate fails on the zero entry, but the weak search is clean.
    std::ofstream(tmp.path / "g.txt") << "8 3 4\n7f 2b bf 08\n52 7f 00 8d\nc2 79 27 36\n";
    const RunResult r = run_cli("analyze --matrix " + (tmp.path / "g.txt").string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"verdict\": \"strong_by_exhaustion\"") != std::string::npos);
    CHECK(r.output.find("certificate failed: singular 1x1") != std::string::npos);

    const RunResult t = run_cli("analyze --format text --spec cauchy:8:3:5");
    CHECK(t.exit_code == 0);
    CHECK(t.output.find("verdict: strong_certified") != std::string::npos);
}

TEST_CASE("analyze usage errors exit 2") {
    CHECK(run_cli("analyze").exit_code == 2);
    CHECK(run_cli("analyze --spec nope:8:2:3").exit_code == 2);
    CHECK(run_cli("analyze --spec cauchy:8:3:5 --format yaml").exit_code == 2);
}

TEST_CASE("attack on a strong dispersal recovers nothing, exit 0") {
    TempDir tmp("ida_cli_attack_strong");
    dump(tmp.path / "input.bin", testutil::make_bytes(512, 4));
    REQUIRE(run_cli("disperse --m 3 --n 5 --in " + (tmp.path / "input.bin").string() + " --out " +
                    tmp.path.string())
                .exit_code == 0);
    const RunResult r = run_cli("attack --out " + (tmp.path / "leak").string() + " " +
                                (tmp.path / "input.p2.ida").string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("no segments recoverable") != std::string::npos);
}

TEST_CASE("attack on the weak fixture dispersal leaks segment 0's file region") {
    TempDir tmp("ida_cli_attack_weak");
    const auto bytes = testutil::make_bytes(4096, 5);
    dump(tmp.path / "input.bin", bytes);
    REQUIRE(run_cli("disperse --m 2 --n 3 --code explicit --points 01,01,02,01,02,00 --in " +
                    (tmp.path / "input.bin").string() + " --out " + tmp.path.string())
                .exit_code == 0);

    const RunResult r = run_cli("attack --out " + (tmp.path / "leak").string() + " " +
                                (tmp.path / "input.p2.ida").string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("segment 0: file bytes [0,2048)") != std::string::npos);

    const auto leaked = slurp(tmp.path / "leak" / "segment_0.bin");
    CHECK(leaked == std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 2048));

    // With m pieces the attack refuses and points at reconstruct.
    const RunResult full = run_cli("attack --out " + (tmp.path / "leak").string() + " " +
                                   (tmp.path / "input.p0.ida").string() + " " +
                                   (tmp.path / "input.p2.ida").string());
    CHECK(full.exit_code == 2);
    CHECK(full.output.find("use full reconstruction") != std::string::npos);
}

TEST_CASE("analyze past the search budget is indeterminate, exit 4") {
    // A 16x18 Cauchy generator: no weak witness exists, but the weak-search
    // space exceeds the 10^6 budget, so the honest verdict is indeterminate.
    const RunResult r = run_cli("analyze --spec cauchy:8:16:18");
    CHECK(r.exit_code == 4);
    CHECK(r.output.find("\"verdict\": \"indeterminate\"") != std::string::npos);
    CHECK(r.output.find("weak-search bounded") != std::string::npos);
}

TEST_CASE("identical invocations produce identical bytes") {
    const RunResult a = run_cli("analyze --spec cauchy:8:3:5");
    const RunResult b = run_cli("analyze --spec cauchy:8:3:5");
    CHECK(a.output == b.output);
    CHECK(run_cli("bogus").exit_code == 2);
}

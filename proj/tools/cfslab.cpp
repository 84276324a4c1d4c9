// cfslab: command-line front end for the storage service, both client
// flavours, and the attack tooling.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfslab/attack.hpp"
#include "cfslab/crypto.hpp"
#include "cfslab/errors.hpp"
#include "cfslab/protocol/hardened_client.hpp"
#include "cfslab/protocol/legacy_client.hpp"
#include "cfslab/protocol/server.hpp"
#include "cfslab/runtime/tcp.hpp"
#include "vectors_check.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace cfslab::tools {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "text";
  std::string root;
  std::string connect;
};

Globals g;

bool json_output() { return g.format == "json"; }

// Prints `j` in json mode, otherwise the text rendering.
void emit(const json& j, const std::string& text) {
  if (json_output()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  }
}

std::string default_root() {
  if (const char* env = std::getenv("CFSLAB_ROOT"); env && *env) return env;
  return "cfslab-data";
}

fs::path root_dir() { return g.root.empty() ? fs::path(default_root()) : fs::path(g.root); }

Bytes read_input(const std::string& path) {
  if (path == "-") return Bytes(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, ByteView data) {
  if (path.empty() || path == "-") {
    std::cout.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("cannot write " + path);
}

Guid parse_guid(const std::string& text) {
  auto g = Guid::parse(text);
  if (!g) throw UsageError("not a canonical guid: " + text);
  return *g;
}

std::pair<std::string, std::uint16_t> split_endpoint(const std::string& endpoint) {
  auto colon = endpoint.rfind(':');
  if (colon == std::string::npos) return {endpoint, kDefaultPort};
  int port = 0;
  try {
    port = std::stoi(endpoint.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("bad port in " + endpoint);
  }
  if (port <= 0 || port > 65535) throw UsageError("bad port in " + endpoint);
  return {endpoint.substr(0, colon), static_cast<std::uint16_t>(port)};
}

// Either an in-process server over --root, or a TCP connection.
class Session {
 public:
  Session() {
    if (!g.connect.empty()) {
      auto [host, port] = split_endpoint(g.connect);
      transport_ = std::make_unique<TcpTransport>(host, port);
    } else {
      server_.emplace(root_dir());
      transport_ = std::make_unique<LoopbackTransport>(*server_);
    }
  }

  Transport& transport() { return *transport_; }

  // The attacker view: direct access to the store when running in-process,
  // otherwise whatever the fetch endpoint hands out.
  CipherBlob legacy_blob(const Guid& guid) {
    if (server_) return server_->store().load_object(guid).ciphertext;
    auto body = call(*transport_, FetchRequest{guid});
    return CipherBlob(from_base64(body.at("ciphertext").get<std::string>()));
  }

 private:
  std::optional<Server> server_;
  std::unique_ptr<Transport> transport_;
};

PasswordPolicy policy_by_name(const std::string& name) {
  if (name == "legacy-6") return PasswordPolicy::legacy6();
  if (name == "legacy-8") return PasswordPolicy::legacy8();
  throw UsageError("unknown legacy policy " + name);
}

// --- password space options --------------------------------------------------

struct SpaceOptions {
  std::string charset = "printable";
  std::size_t length = 0;
  std::size_t min_len = 1;
  std::size_t max_len = 6;
  bool any = false;
  std::string specials{kLegacySpecials};
  std::string wordlist;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--charset", charset, "class list (lower+upper+digits+special+symbols+printable) or literal")
        ->capture_default_str();
    cmd->add_option("--length", length, "exact length (overrides --min-len/--max-len)");
    cmd->add_option("--min-len", min_len)->capture_default_str();
    cmd->add_option("--max-len", max_len)->capture_default_str();
    cmd->add_flag("--no-special-requirement", any, "do not require a special character");
    cmd->add_option("--specials", specials, "special-character set")->capture_default_str();
    cmd->add_option("--wordlist", wordlist, "guess from a file instead of a generated space");
  }

  PasswordSpace space() const {
    PasswordSpace s{charset_from_spec(charset), length ? length : min_len, length ? length : max_len, !any, specials};
    try {
      s.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return s;
  }
};

// Runs `fn` with either a Wordlist or a PasswordSpace.
template <typename Fn>
auto with_source(const SpaceOptions& opts, Fn&& fn) {
  if (!opts.wordlist.empty()) return fn(Wordlist::load(opts.wordlist));
  return fn(opts.space());
}

struct BlobSelector {
  std::string guid;
  std::string file;

  void add_to(CLI::App* cmd) {
    auto* a = cmd->add_option("--guid", guid, "stored legacy object");
    auto* b = cmd->add_option("--blob", file, "ciphertext file");
    a->excludes(b);
  }

  CipherBlob load() const {
    if (!file.empty()) return CipherBlob(read_input(file));
    if (guid.empty()) throw UsageError("one of --guid or --blob is required");
    Session session;
    return session.legacy_blob(parse_guid(guid));
  }
};

std::string extrapolation_line(const Extrapolation& e) {
  std::ostringstream out;
  out << "  " << e.space << ": " << e.size.str() << " passwords, ";
  if (e.years() >= 1) {
    out << std::scientific << std::setprecision(3) << e.years() << " years";
  } else {
    out << std::fixed << std::setprecision(2) << e.hours() << " hours";
  }
  return out.str();
}

// --- legacy client ------------------------------------------------------------

void add_store(CLI::App& app) {
  auto* cmd = app.add_subcommand("store", "encrypt a file with the legacy scheme and upload it");
  static std::string in, password, policy = "legacy-6";
  cmd->add_option("--in,-i", in, "plaintext file, - for stdin")->required();
  cmd->add_option("--password,-p", password)->required();
  cmd->add_option("--policy", policy, "legacy-6 or legacy-8")->capture_default_str();
  cmd->callback([] {
    Session session;
    LegacyClient client(session.transport(), policy_by_name(policy));
    auto guid = client.store(read_input(in), password);
    emit({{"guid", guid.str()}}, guid.str());
  });
}

void add_fetch(CLI::App& app) {
  auto* cmd = app.add_subcommand("fetch", "download and decrypt a legacy object");
  static std::string guid, password, out;
  cmd->add_option("--guid,-g", guid)->required();
  cmd->add_option("--password,-p", password)->required();
  cmd->add_option("--out,-o", out, "output file (default stdout)");
  cmd->callback([] {
    Session session;
    LegacyClient client(session.transport());
    write_output(out, client.fetch(parse_guid(guid), password));
  });
}

void add_share(CLI::App& app) {
  auto* cmd = app.add_subcommand("share", "legacy share: the server re-encrypts under the sharing password");
  static std::string guid, password, sharing, policy = "legacy-6";
  cmd->add_option("--guid,-g", guid)->required();
  cmd->add_option("--password,-p", password, "storage password")->required();
  cmd->add_option("--sharing-password,-s", sharing)->required();
  cmd->add_option("--policy", policy)->capture_default_str();
  cmd->callback([] {
    Session session;
    LegacyClient client(session.transport(), policy_by_name(policy));
    auto share = client.share(parse_guid(guid), password, sharing);
    emit({{"share_guid", share.str()}}, share.str());
  });
}

void add_access(CLI::App& app) {
  auto* cmd = app.add_subcommand("access", "open a legacy share");
  static std::string share, sharing, out;
  cmd->add_option("--share", share)->required();
  cmd->add_option("--sharing-password,-s", sharing)->required();
  cmd->add_option("--out,-o", out);
  cmd->callback([] {
    Session session;
    LegacyClient client(session.transport());
    write_output(out, client.access_shared(parse_guid(share), sharing, unix_now()));
  });
}

// --- hardened client ----------------------------------------------------------

HardenedClientOptions hardened_options(std::uint32_t iterations) {
  if (iterations < kKdfIterationFloor) {
    throw UsageError("--iterations must be at least " + std::to_string(kKdfIterationFloor));
  }
  return HardenedClientOptions{iterations, {}};
}

void add_hstore(CLI::App& app) {
  auto* cmd = app.add_subcommand("hstore", "encrypt with a salted KDF and random IV, then upload");
  static std::string in, password;
  static std::uint32_t iterations = kDefaultKdfIterations;
  cmd->add_option("--in,-i", in)->required();
  cmd->add_option("--password,-p", password)->required();
  cmd->add_option("--iterations", iterations, "PBKDF2 iterations")->capture_default_str();
  cmd->callback([] {
    Session session;
    HardenedClient client(session.transport(), system_random(), hardened_options(iterations));
    auto guid = client.store(read_input(in), password);
    emit({{"guid", guid.str()}}, guid.str());
  });
}

void add_hfetch(CLI::App& app) {
  auto* cmd = app.add_subcommand("hfetch", "download and decrypt a hardened object");
  static std::string guid, password, out;
  cmd->add_option("--guid,-g", guid)->required();
  cmd->add_option("--password,-p", password)->required();
  cmd->add_option("--out,-o", out);
  cmd->callback([] {
    Session session;
    HardenedClient client(session.transport(), system_random());
    write_output(out, client.fetch(parse_guid(guid), password));
  });
}

void add_hshare(CLI::App& app) {
  auto* cmd = app.add_subcommand("hshare", "hardened share: decrypt and re-encrypt locally, upload ciphertext only");
  static std::string guid, password, sharing;
  static std::uint32_t iterations = kDefaultKdfIterations;
  cmd->add_option("--guid,-g", guid)->required();
  cmd->add_option("--password,-p", password)->required();
  cmd->add_option("--sharing-password,-s", sharing)->required();
  cmd->add_option("--iterations", iterations)->capture_default_str();
  cmd->callback([] {
    Session session;
    HardenedClient client(session.transport(), system_random(), hardened_options(iterations));
    auto share = client.share(parse_guid(guid), password, sharing);
    emit({{"share_guid", share.str()}}, share.str());
  });
}

void add_haccess(CLI::App& app) {
  auto* cmd = app.add_subcommand("haccess", "open a hardened share");
  static std::string share, sharing, out;
  cmd->add_option("--share", share)->required();
  cmd->add_option("--sharing-password,-s", sharing)->required();
  cmd->add_option("--out,-o", out);
  cmd->callback([] {
    Session session;
    HardenedClient client(session.transport(), system_random());
    write_output(out, client.access(parse_guid(share), sharing, unix_now()));
  });
}

// --- server -------------------------------------------------------------------

void add_serve(CLI::App& app) {
  auto* cmd = app.add_subcommand("serve", "run the storage service over TCP");
  static std::string host = "127.0.0.1";
  static std::uint16_t port = kDefaultPort;
  cmd->add_option("--host", host)->capture_default_str();
  cmd->add_option("--port", port)->capture_default_str();
  cmd->callback([] {
    Server server(root_dir());
    TcpServer tcp([&](ByteView frame) { return server.handle_frame(frame); }, host, port);
    const auto bound = tcp.listen();
    emit({{"host", host}, {"port", bound}, {"root", root_dir().string()}},
         "listening on " + host + ":" + std::to_string(bound) + ", data in " + root_dir().string());
    std::cout.flush();
    tcp.serve_forever();
  });
}

// --- attacks ------------------------------------------------------------------

void add_crack(CLI::App& app) {
  auto* cmd = app.add_subcommand("crack", "offline guessing against a legacy ciphertext");
  static BlobSelector blob;
  static SpaceOptions space;
  static std::size_t parallelism = std::max(1u, std::thread::hardware_concurrency());
  static std::string heuristic = "text";
  static double min_score = 0.0;
  static std::size_t top = 10;
  blob.add_to(cmd);
  space.add_to(cmd);
  cmd->add_option("--parallelism,-j", parallelism)->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--heuristic", heuristic, "text or magic:<hex>")->capture_default_str();
  cmd->add_option("--min-score", min_score, "keep only candidates scoring at least this")->capture_default_str();
  cmd->add_option("--top", top, "candidates shown in text output")->capture_default_str();
  cmd->callback([] {
    CrackOptions options;
    options.parallelism = parallelism;
    try {
      options.heuristic = scorer_from_spec(heuristic);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    options.keep_min_score = min_score;
    const auto target = blob.load();
    auto report = with_source(space, [&](const auto& source) { return crack(target, source, options); });

    std::ostringstream text;
    text << "searched " << report.space << ": " << report.guesses_tried << " guesses in " << std::fixed
         << std::setprecision(2) << report.elapsed_seconds << " s (" << std::scientific << std::setprecision(3)
         << report.throughput << " guesses/s, " << report.parallelism << " threads)\n";
    text << report.padding_valid_count << " padding-valid candidates";
    if (!report.candidates.empty()) text << ", best first:";
    text << '\n';
    for (std::size_t i = 0; i < std::min(top, report.candidates.size()); ++i) {
      const auto& c = report.candidates[i];
      text << "  " << std::fixed << std::setprecision(3) << c.score << "  " << c.password << '\n';
    }
    if (!report.extrapolations.empty()) text << "time to exhaust at this rate:\n";
    for (const auto& e : report.extrapolations) text << extrapolation_line(e) << '\n';
    emit(report.to_json(), text.str());
  });
}

void add_bench(CLI::App& app) {
  auto* cmd = app.add_subcommand("bench", "measure single-core legacy guessing throughput");
  static double seconds = 10.0, warmup = 1.0;
  static std::uint32_t kdf_iterations = 0;
  cmd->add_option("--seconds", seconds)->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--warmup", warmup)->capture_default_str();
  cmd->add_option("--kdf-iterations", kdf_iterations, "also time hardened guesses at this iteration count");
  cmd->callback([] {
    auto bench = bench_legacy_guessing(seconds, warmup);
    auto j = bench.to_json();
    std::ostringstream text;
    text << bench.hardware << (bench.aesni ? ", AES-NI" : ", no AES-NI") << '\n';
    text << std::scientific << std::setprecision(3) << bench.guesses_per_second << " guesses/s over " << std::fixed
         << std::setprecision(1) << bench.seconds << " s\n";
    auto projection = extrapolate(PasswordSpace::legacy(6), bench.guesses_per_second);
    j["legacy6"] = projection.to_json();
    text << "6-character legacy space: " << std::fixed << std::setprecision(1) << projection.hours() << " hours\n";
    if (kdf_iterations > 0) {
      auto kdf = bench_kdf_guessing(kdf_iterations);
      const double ratio = kdf.seconds_per_guess * bench.guesses_per_second;
      j["kdf"] = kdf.to_json();
      j["kdf"]["cost_ratio"] = ratio;
      text << "hardened guess at " << kdf_iterations << " iterations: " << std::setprecision(4)
           << kdf.seconds_per_guess << " s (" << std::scientific << std::setprecision(2) << ratio
           << " x a legacy guess)\n";
    }
    emit(j, text.str());
  });
}

void add_extrapolate(CLI::App& app) {
  auto* cmd = app.add_subcommand("extrapolate", "project exhaustive-search time for password spaces");
  static double throughput = 0;
  static double target_hours = 30.0;
  static SpaceOptions space;
  static bool custom = false;
  cmd->add_option("--throughput,-t", throughput, "guesses per second")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--target-hours", target_hours, "report the rate needed to finish in this many hours")
      ->capture_default_str();
  cmd->add_flag("--space", custom, "use the space given by the charset/length options instead of the presets");
  space.add_to(cmd);
  cmd->callback([] {
    std::vector<PasswordSpace> spaces = custom ? std::vector{space.space()} : reference_spaces();
    json list = json::array();
    std::ostringstream text;
    text << "at " << std::scientific << std::setprecision(3) << throughput << " guesses/s:\n";
    for (const auto& s : spaces) {
      auto e = extrapolate(s, throughput);
      auto entry = e.to_json();
      entry["required_throughput"] = required_throughput(e.size, target_hours * kSecondsPerHour);
      list.push_back(entry);
      text << extrapolation_line(e) << "; " << std::scientific << std::setprecision(3)
           << entry["required_throughput"].get<double>() << " guesses/s needed for " << std::defaultfloat
           << target_hours << " hours\n";
    }
    emit({{"throughput", throughput}, {"target_hours", target_hours}, {"spaces", list}}, text.str());
  });
}

void add_prefix_scan(CLI::App& app) {
  auto* cmd = app.add_subcommand("prefix-scan", "find stored objects whose ciphertexts share leading blocks");
  static std::string a, b;
  cmd->add_option("--a", a, "first ciphertext file (compare two files instead of scanning the store)");
  cmd->add_option("--b", b, "second ciphertext file");
  cmd->callback([] {
    if (!a.empty() || !b.empty()) {
      if (a.empty() || b.empty()) throw UsageError("--a and --b go together");
      auto n = prefix_leak(CipherBlob(read_input(a)), CipherBlob(read_input(b)));
      emit({{"shared_blocks", n}, {"shared_bytes", n * kBlockSize}},
           std::to_string(n) + " shared leading blocks (" + std::to_string(n * kBlockSize) + " bytes)");
      return;
    }
    BlobStore store(root_dir());
    auto findings = scan_prefix_leaks(store);
    json list = json::array();
    std::string text = std::to_string(findings.size()) + " pairs share leading blocks\n";
    for (const auto& f : findings) {
      list.push_back({{"first", f.first.str()}, {"second", f.second.str()}, {"shared_blocks", f.shared_blocks}});
      text += "  " + f.first.str() + " " + f.second.str() + " " + std::to_string(f.shared_blocks) + " blocks\n";
    }
    emit({{"pairs", list}}, text);
  });
}

void add_padding_collision(CLI::App& app) {
  auto* cmd = app.add_subcommand("padding-collision", "find a wrong password whose key yields valid padding");
  static BlobSelector blob;
  static SpaceOptions space;
  static std::string true_password;
  blob.add_to(cmd);
  space.add_to(cmd);
  cmd->add_option("--true-password", true_password, "excluded from the search");
  cmd->callback([] {
    const auto target = blob.load();
    auto result = with_source(space, [&](const auto& s) { return find_padding_collision(target, s, true_password); });
    json j{{"found", result.found()}, {"attempts", result.attempts}};
    if (result.found()) j["password"] = *result.password;
    emit(j, result.found() ? *result.password + " (after " + std::to_string(result.attempts) + " attempts)"
                           : "no collision in " + std::to_string(result.attempts) + " attempts");
    if (!result.found()) throw Error("search space exhausted");
  });
}

void add_audit(CLI::App& app) {
  auto* cmd = app.add_subcommand("audit", "check which secrets appear in the server transcript");
  static std::string transcript;
  static std::vector<std::string> secrets;
  cmd->add_option("--transcript", transcript, "transcript file (default <root>/transcript.jsonl)");
  cmd->add_option("--secret", secrets, "string to look for (repeatable)")->required();
  cmd->callback([] {
    const fs::path file = transcript.empty() ? root_dir() / "transcript.jsonl" : fs::path(transcript);
    auto report = secrecy_audit(Transcript::read_file(file), secrets);
    std::string text;
    for (const auto& e : report.exposures) {
      text += e.secret + ": ";
      if (!e.exposed()) {
        text += "not seen\n";
        continue;
      }
      text += "seen in " + std::to_string(e.arrival_indices.size()) + " request(s):";
      for (std::size_t i = 0; i < e.ops.size(); ++i) text += " #" + std::to_string(e.arrival_indices[i]) + " " + e.ops[i];
      text += '\n';
    }
    emit(report.to_json(), text);
  });
}

void add_genpass(CLI::App& app) {
  auto* cmd = app.add_subcommand("genpass", "generate a random password that passes the hardened policy");
  static std::size_t length = 16;
  cmd->add_option("--length,-n", length)->capture_default_str()->check(CLI::Range(12, 64));
  cmd->callback([] {
    const auto alphabet = printable_ascii();
    std::string pw;
    do {
      pw.assign(length, ' ');
      for (auto& c : pw) c = alphabet[system_random().uniform(alphabet.size())];
    } while (!password_strength_check(pw).empty());
    emit({{"password", pw}, {"entropy_bits", estimate_entropy_bits(pw)}}, pw);
  });
}

void add_vectors_check(CLI::App& app) {
  auto* cmd = app.add_subcommand("vectors-check", "re-derive the bundled known-answer vectors");
  static std::string dir = CFSLAB_DEFAULT_VECTOR_DIR;
  cmd->add_option("--dir", dir, "vector directory")->capture_default_str();
  cmd->callback([] {
    auto results = check_vectors(dir);
    json list = json::array();
    std::string text;
    bool ok = true;
    for (const auto& r : results) {
      ok = ok && r.failures.empty();
      list.push_back({{"file", r.file}, {"checked", r.checked}, {"failures", r.failures}});
      text += (r.failures.empty() ? "ok    " : "FAIL  ") + r.file + " (" + std::to_string(r.checked) + " records)\n";
      for (const auto& f : r.failures) text += "      " + f + '\n';
    }
    emit({{"ok", ok}, {"files", list}}, text);
    if (!ok) throw Error("vector mismatch");
  });
}

int run(int argc, char** argv) {
  CLI::App app{"cfslab: zero-IV file storage service, its hardened counterpart, and attacks on it"};
  app.require_subcommand(1);
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--root", g.root, "data directory for the in-process server (env CFSLAB_ROOT)");
  app.add_option("--connect", g.connect, "talk to a running server at host:port instead");

  add_serve(app);
  add_store(app);
  add_fetch(app);
  add_share(app);
  add_access(app);
  add_hstore(app);
  add_hfetch(app);
  add_hshare(app);
  add_haccess(app);
  add_crack(app);
  add_bench(app);
  add_extrapolate(app);
  add_prefix_scan(app);
  add_padding_collision(app);
  add_audit(app);
  add_genpass(app);
  add_vectors_check(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error (" << e.kind() << "): " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace
}  // namespace cfslab::tools

int main(int argc, char** argv) { return cfslab::tools::run(argc, argv); }

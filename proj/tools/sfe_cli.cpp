#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "sfe/error.hpp"
#include "sfe/protocols.hpp"

namespace {

int usage_exit(const std::string& msg) {
  std::cerr << "sfe: " << msg << "\n";
  return 2;
}

// Leftover "--name value" / "--name=value" pairs become protocol parameters.
std::map<std::string, std::string> collect_params(const std::vector<std::string>& extras) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const auto& a = extras[i];
    if (a.rfind("--", 0) != 0) throw sfe::UsageError("unexpected argument '" + a + "'");
    auto eq = a.find('=');
    if (eq != std::string::npos) {
      out[a.substr(2, eq - 2)] = a.substr(eq + 1);
    } else {
      if (i + 1 >= extras.size()) throw sfe::UsageError("parameter " + a + " needs a value");
      out[a.substr(2)] = extras[++i];
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-party secure function evaluation runner"};
  app.allow_extras();
  std::string protocol, transport = "mem", ot = "ideal", ot12_base = "ideal", json_out, connect;
  std::uint64_t seed = 1;
  std::size_t k = 128;
  int listen = -1;
  bool timing = false, list = false;
  app.add_option("--protocol,-p", protocol, "protocol name (see --list)")->envname("SFE_PROTOCOL");
  app.add_option("--seed", seed, "run seed")->envname("SFE_SEED");
  app.add_option("--transport", transport, "mem or tcp")->envname("SFE_TRANSPORT");
  app.add_option("--ot", ot, "ideal, group or ot12")->envname("SFE_OT");
  app.add_option("--ot12-base", ot12_base, "base backend under ot12")->envname("SFE_OT12_BASE");
  app.add_option("--k", k, "security parameter in bits")->envname("SFE_K");
  app.add_option("--listen", listen, "run Bob's endpoint, accepting on this port")->envname("SFE_LISTEN");
  app.add_option("--connect", connect, "run Alice's endpoint against host:port")->envname("SFE_CONNECT");
  app.add_option("--json", json_out, "write the report here instead of stdout")->envname("SFE_JSON");
  app.add_flag("--timing", timing, "include wall time in the report")->envname("SFE_TIMING");
  app.add_flag("--list", list, "list protocols and their parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (list) {
    for (const auto& info : sfe::protocol_registry()) {
      std::cout << info.name << "  " << info.summary << "\n";
      for (const auto& [name, def] : info.params) std::cout << "    --" << name << " (default " << def << ")\n";
    }
    return 0;
  }

  try {
    if (protocol.empty()) throw sfe::UsageError("--protocol is required (see --list)");
    sfe::RunConfig cfg;
    cfg.protocol = protocol;
    cfg.params = collect_params(app.remaining());
    cfg.session.seed = seed;
    cfg.session.transport = sfe::parse_transport(transport);
    cfg.session.ot = sfe::parse_ot_kind(ot);
    cfg.session.ot12_base = sfe::parse_ot_kind(ot12_base);
    cfg.session.security.k = k;
    cfg.timing = timing;
    if (listen >= 0) {
      if (listen > 65535) throw sfe::UsageError("--listen port out of range");
      cfg.listen_port = static_cast<std::uint16_t>(listen);
    }
    cfg.connect = connect;
    if (cfg.listen_port && !connect.empty()) throw sfe::UsageError("use either --listen or --connect");

    auto report = sfe::run_cli(cfg);
    std::string text = report.dump(2) + "\n";
    if (json_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(json_out, std::ios::binary);
      if (!f) throw sfe::UsageError("cannot write " + json_out);
      f << text;
    }
    return report.value("ok", true) ? 0 : 1;
  } catch (const sfe::UsageError& e) {
    return usage_exit(e.what());
  } catch (const std::exception& e) {
    std::cerr << "sfe: error: " << e.what() << "\n";
    return 1;
  }
}

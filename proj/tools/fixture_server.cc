// Copyright 2026 The oragent Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// A scripted chat-completions server for recording fixture stores.
//
// Rules file:
//   {"rules": [{"name": "...", "contains": ["..."], "excludes": ["..."],
//               "content_file": "responses/x.md",
//               "reasoning_file": "responses/x.think"}]}
//
// A request matches a rule when every "contains" string and no "excludes"
// string occurs in its messages joined by newlines. The first matching rule
// answers; files are relative to the rules file. Unmatched requests get 422.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"

namespace {

using Json = nlohmann::json;

struct Rule {
  std::string name;
  std::vector<std::string> contains;
  std::vector<std::string> excludes;
  std::string content;
  std::string reasoning;
};

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<Rule> LoadRules(const std::filesystem::path& path) {
  const Json doc = Json::parse(Slurp(path));
  const std::filesystem::path base = path.parent_path();
  std::vector<Rule> rules;
  for (const Json& r : doc.at("rules")) {
    Rule rule;
    rule.name = r.at("name").get<std::string>();
    rule.contains = r.value("contains", std::vector<std::string>{});
    rule.excludes = r.value("excludes", std::vector<std::string>{});
    rule.content = Slurp(base / r.at("content_file").get<std::string>());
    if (r.contains("reasoning_file")) {
      rule.reasoning = Slurp(base / r.at("reasoning_file").get<std::string>());
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

const Rule* Match(const std::vector<Rule>& rules, const std::string& text) {
  for (const Rule& rule : rules) {
    bool ok = true;
    for (const std::string& s : rule.contains) ok = ok && text.find(s) != std::string::npos;
    for (const std::string& s : rule.excludes) ok = ok && text.find(s) == std::string::npos;
    if (ok) return &rule;
  }
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scripted chat-completions server"};
  std::string rules_path, port_file, api_key;
  int port = 0;
  int fail_first = 0;
  app.add_option("--rules", rules_path, "Rules JSON file")->required();
  app.add_option("--port", port, "Port on 127.0.0.1 (0 picks one)");
  app.add_option("--port-file", port_file, "Write the bound port here");
  app.add_option("--api-key", api_key, "Require this bearer token");
  app.add_option("--fail-first", fail_first, "Answer the first N requests with 503");
  CLI11_PARSE(app, argc, argv);

  std::vector<Rule> rules;
  try {
    rules = LoadRules(rules_path);
  } catch (const std::exception& e) {
    std::cerr << "fixture_server: " << e.what() << "\n";
    return 1;
  }

  httplib::Server server;
  std::atomic<int> requests{0};
  auto handler = [&](const httplib::Request& req, httplib::Response& res) {
    const int n = requests.fetch_add(1);
    if (n < fail_first) {
      res.status = 503;
      res.set_content(R"({"error":{"message":"scripted outage"}})", "application/json");
      return;
    }
    if (!api_key.empty() && req.get_header_value("Authorization") != "Bearer " + api_key) {
      res.status = 401;
      res.set_content(R"({"error":{"message":"bad key"}})", "application/json");
      return;
    }
    Json body;
    try {
      body = Json::parse(req.body);
    } catch (const Json::exception& e) {
      res.status = 400;
      res.set_content(Json{{"error", {{"message", e.what()}}}}.dump(), "application/json");
      return;
    }
    std::string text;
    for (const Json& m : body.at("messages")) {
      text += m.at("content").get<std::string>();
      text += "\n";
    }
    const Rule* rule = Match(rules, text);
    if (rule == nullptr) {
      std::cerr << "fixture_server: no rule matches request " << n << "\n";
      res.status = 422;
      res.set_content(R"({"error":{"message":"no fixture rule matches"}})",
                      "application/json");
      return;
    }
    std::cerr << "fixture_server: request " << n << " -> " << rule->name << "\n";
    Json message = {{"role", "assistant"}, {"content", rule->content}};
    if (!rule->reasoning.empty()) message["reasoning_content"] = rule->reasoning;
    const Json reply = {
        {"id", "fixture-" + std::to_string(n)},
        {"object", "chat.completion"},
        {"model", body.value("model", "")},
        {"choices", {{{"index", 0}, {"message", message}, {"finish_reason", "stop"}}}},
        {"usage",
         {{"prompt_tokens", static_cast<int64_t>(text.size() / 4)},
          {"completion_tokens",
           static_cast<int64_t>((rule->content.size() + rule->reasoning.size()) / 4)}}}};
    res.set_content(reply.dump(), "application/json");
  };
  server.Post("/chat/completions", handler);
  server.Post("/v1/chat/completions", handler);
  server.Post("/shutdown", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content("bye\n", "text/plain");
    server.stop();
  });

  const int bound = port == 0 ? server.bind_to_any_port("127.0.0.1")
                              : (server.bind_to_port("127.0.0.1", port) ? port : -1);
  if (bound < 0) {
    std::cerr << "fixture_server: cannot bind\n";
    return 1;
  }
  if (!port_file.empty()) {
    std::ofstream(port_file) << bound << "\n";
  }
  std::cerr << "fixture_server: listening on 127.0.0.1:" << bound << "\n";
  server.listen_after_bind();
  return 0;
}

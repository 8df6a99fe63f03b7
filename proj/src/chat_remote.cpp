// SPDX-License-Identifier: Apache-2.0
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <fmt/format.h>

#include "courtside/narrative.hpp"
#include "courtside/statsqa.hpp"

namespace courtside {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw std::invalid_argument(fmt::format("endpoint '{}' has no scheme", url));
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class RemoteChatClient : public ChatClient {
 public:
  explicit RemoteChatClient(RemoteChatConfig config) : config_(std::move(config)), url_(split_url(config_.endpoint)) {
    if (config_.key.empty()) throw std::invalid_argument("remote chat needs an API key");
  }

  std::string complete(const std::string& prompt, std::chrono::milliseconds timeout) override {
    httplib::Client cli(url_.origin);
    const auto limit = std::min(timeout, config_.timeout);
    cli.set_connection_timeout(limit);
    cli.set_read_timeout(limit);
    cli.set_write_timeout(limit);
    cli.set_bearer_token_auth(config_.key);

    const nlohmann::json body = {{"model", config_.model},
                                 {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})}};
    auto res = cli.Post(url_.path, body.dump(), "application/json");
    if (!res) {
      const auto err = res.error();
      if (err == httplib::Error::Read || err == httplib::Error::Write || err == httplib::Error::ConnectionTimeout)
        throw ChatTimeout(fmt::format("chat request timed out ({})", httplib::to_string(err)));
      throw ChatError(fmt::format("chat request failed ({})", httplib::to_string(err)));
    }
    if (res->status != 200) throw ChatError(fmt::format("chat endpoint returned HTTP {}", res->status));
    try {
      const auto reply = nlohmann::json::parse(res->body);
      return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ChatError(fmt::format("unexpected chat response: {}", e.what()));
    }
  }

 private:
  RemoteChatConfig config_;
  SplitUrl url_;
};

class HttpSearchTool : public Tool {
 public:
  explicit HttpSearchTool(HttpToolConfig config) : config_(std::move(config)), url_(split_url(config_.endpoint)) {}
  std::string name() const override { return config_.name; }
  std::string description() const override { return config_.description; }

  std::string invoke(const std::string& input) const override {
    httplib::Client cli(url_.origin);
    cli.set_connection_timeout(config_.timeout);
    cli.set_read_timeout(config_.timeout);
    if (!config_.key.empty()) cli.set_bearer_token_auth(config_.key);
    auto res = cli.Get(url_.path, httplib::Params{{"q", input}}, httplib::Headers{});
    if (!res) return fmt::format("Error: search request failed ({})", httplib::to_string(res.error()));
    if (res->status != 200) return fmt::format("Error: search returned HTTP {}", res->status);
    return res->body.empty() ? std::string("No results found.") : res->body;
  }

 private:
  HttpToolConfig config_;
  SplitUrl url_;
};

}  // namespace

std::shared_ptr<const Tool> make_http_tool(const HttpToolConfig& config) {
  return std::make_shared<HttpSearchTool>(config);
}

std::unique_ptr<ChatClient> make_remote_chat_client(const RemoteChatConfig& config) {
  return std::make_unique<RemoteChatClient>(config);
}

}  // namespace courtside

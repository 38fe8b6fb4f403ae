#include <fstream>
#include <iterator>

#include <httplib.h>

#include "sigmarev/market_data.hpp"

namespace sigmarev {
namespace {

TransportResponse get_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return {404, {}, "no such file: " + path};
  return {200, std::string{std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()}, {}};
}

TransportResponse get_http(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_start);
  const std::string target = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  if (!client.is_valid()) return {0, {}, "unsupported endpoint origin '" + origin + "'"};
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  client.set_default_headers({{"User-Agent", "sigmarev/1.0"}});
  auto res = client.Get(target);
  if (!res) return {0, {}, httplib::to_string(res.error())};
  return {res->status, res->body, {}};
}

}  // namespace

Transport http_transport() {
  return [](const std::string& url) -> TransportResponse {
    if (url.rfind("file://", 0) == 0) return get_file(url.substr(7));
    if (url.rfind("http://", 0) == 0 || url.rfind("https://", 0) == 0) return get_http(url);
    return {0, {}, "unsupported URL scheme in '" + url + "'"};
  };
}

}  // namespace sigmarev

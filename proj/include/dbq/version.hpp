#pragma once

#define DBQ_VERSION_STRING "0.1.0"

#pragma once

#define QDECAY_VERSION_MAJOR 0
#define QDECAY_VERSION_MINOR 1
#define QDECAY_VERSION_PATCH 0
#define QDECAY_VERSION "0.1.0"

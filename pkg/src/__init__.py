# FluteType source package

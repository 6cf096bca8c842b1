{"format":"cc-v1","cells":["BIGON_PILLOW"],"benign":[false],"gluings":[[0,0,0,1,1,true]]}
